#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace evrec {

/// Calendar month a partition (corpus, embedding model, index) belongs to.
struct MonthKey {
    int year = 1970;
    unsigned month = 1;

    friend auto operator<=>(const MonthKey&, const MonthKey&) = default;

    /// "YYYY-MM", zero padded.
    std::string to_string() const;

    /// Parses "YYYY-MM"; std::nullopt on anything else.
    static std::optional<MonthKey> parse(std::string_view text);

    static MonthKey of(std::chrono::year_month_day date);
};

/// Strict "YYYY-MM-DD" Gregorian date parser.
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);
std::string format_date(std::chrono::year_month_day date);

/// Normalized bag of words for one item: category tokens first, then title
/// tokens. Lowercases with Unicode simple case mapping and splits on every
/// code point that is not a letter or digit.
std::vector<std::string> tokenize(std::string_view category, std::string_view title);

/// Tokenizes a single free-text string (seed keywords, CLI input).
std::vector<std::string> tokenize(std::string_view text);

struct ItemDocument {
    std::string doc_id;
    std::chrono::year_month_day sold_date{};
    std::string category;
    std::string title;
    std::vector<std::string> tokens;
    /// Leading entries of `tokens` that came from the category.
    std::size_t category_token_count = 0;

    /// Builds a document and derives its tokens.
    static ItemDocument make(std::string doc_id, std::chrono::year_month_day sold_date,
                             std::string category, std::string title);

    MonthKey month() const { return MonthKey::of(sold_date); }

    friend bool operator==(const ItemDocument&, const ItemDocument&) = default;
};

struct MonthlyCorpus {
    MonthKey month;
    std::vector<ItemDocument> documents;
};

struct LineError {
    std::size_t line = 0;
    std::string message;
};

struct IngestResult {
    std::vector<ItemDocument> documents;
    std::vector<LineError> errors;

    std::size_t error_count() const { return errors.size(); }
};

/// Reads TAB-separated records (doc_id, sold_date, category, title).
/// Lines starting with '#' and blank lines are ignored. Bad dates, wrong
/// field counts and unusable doc_ids are skipped and reported; a repeated
/// doc_id throws DuplicateDocument.
IngestResult ingest(std::istream& in);

/// Writes documents in the same record format `ingest` reads.
void write_corpus(std::ostream& out, const std::vector<ItemDocument>& docs);

/// Partitions by the calendar month of sold_date, ascending by month.
/// Documents keep their input order inside a partition.
std::vector<MonthlyCorpus> segment_by_month(std::vector<ItemDocument> docs);

/// The term set V of a corpus: dense ids and corpus frequencies.
/// Ids are assigned by descending frequency, ties by term.
class Vocabulary {
public:
    struct Entry {
        std::uint32_t id;
        std::uint64_t count;
    };

    Vocabulary() = default;

    static Vocabulary build(const std::vector<ItemDocument>& docs, std::uint64_t min_count = 1);

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    bool contains(std::string_view term) const;
    std::optional<Entry> find(std::string_view term) const;

    const std::string& term(std::uint32_t id) const { return terms_.at(id); }
    std::uint64_t count(std::uint32_t id) const { return counts_.at(id); }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

private:
    std::vector<std::string> terms_;
    std::vector<std::uint64_t> counts_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

} // namespace evrec
