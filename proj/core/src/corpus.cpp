#include "evrec/corpus.hpp"

#include "evrec/errors.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

namespace evrec {

namespace {

template <typename Int>
bool parse_fixed_digits(std::string_view text, Int& value)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::string pad(unsigned value, int width)
{
    std::string s = std::to_string(value);
    if (static_cast<int>(s.size()) < width)
        s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
    return s;
}

void append_tokens(std::string_view text, std::vector<std::string>& out)
{
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    std::string current;
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        if (c >= 0 && u_isalnum(c)) {
            UChar32 lower = u_tolower(c);
            char buf[U8_MAX_LENGTH];
            int32_t n = 0;
            U8_APPEND_UNSAFE(buf, n, lower);
            current.append(buf, static_cast<std::size_t>(n));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty())
        out.push_back(std::move(current));
}

// doc_ids end up as space/colon/comma delimited fields in the index file.
bool usable_doc_id(std::string_view id)
{
    if (id.empty())
        return false;
    return std::none_of(id.begin(), id.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' || c == ':' ||
               c == ',';
    });
}

std::vector<std::string_view> split_tabs(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace

std::string MonthKey::to_string() const
{
    return pad(static_cast<unsigned>(year), 4) + "-" + pad(month, 2);
}

std::optional<MonthKey> MonthKey::parse(std::string_view text)
{
    if (text.size() != 7 || text[4] != '-')
        return std::nullopt;
    int year = 0;
    unsigned month = 0;
    if (!parse_fixed_digits(text.substr(0, 4), year) || !parse_fixed_digits(text.substr(5, 2), month))
        return std::nullopt;
    if (month < 1 || month > 12)
        return std::nullopt;
    return MonthKey{year, month};
}

MonthKey MonthKey::of(std::chrono::year_month_day date)
{
    return MonthKey{static_cast<int>(date.year()), static_cast<unsigned>(date.month())};
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        return std::nullopt;
    int year = 0;
    unsigned month = 0;
    unsigned day = 0;
    if (!parse_fixed_digits(text.substr(0, 4), year) || !parse_fixed_digits(text.substr(5, 2), month) ||
        !parse_fixed_digits(text.substr(8, 2), day))
        return std::nullopt;
    std::chrono::year_month_day date{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!date.ok())
        return std::nullopt;
    return date;
}

std::string format_date(std::chrono::year_month_day date)
{
    return pad(static_cast<unsigned>(static_cast<int>(date.year())), 4) + "-" +
           pad(static_cast<unsigned>(date.month()), 2) + "-" + pad(static_cast<unsigned>(date.day()), 2);
}

std::vector<std::string> tokenize(std::string_view category, std::string_view title)
{
    std::vector<std::string> tokens;
    append_tokens(category, tokens);
    append_tokens(title, tokens);
    return tokens;
}

std::vector<std::string> tokenize(std::string_view text)
{
    std::vector<std::string> tokens;
    append_tokens(text, tokens);
    return tokens;
}

ItemDocument ItemDocument::make(std::string doc_id, std::chrono::year_month_day sold_date, std::string category,
                                std::string title)
{
    ItemDocument doc;
    doc.doc_id = std::move(doc_id);
    doc.sold_date = sold_date;
    doc.category = std::move(category);
    doc.title = std::move(title);
    append_tokens(doc.category, doc.tokens);
    doc.category_token_count = doc.tokens.size();
    append_tokens(doc.title, doc.tokens);
    return doc;
}

IngestResult ingest(std::istream& in)
{
    IngestResult result;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;

        auto fields = split_tabs(line);
        if (fields.size() != 4) {
            result.errors.push_back({line_no, "expected 4 tab-separated fields, found " +
                                                  std::to_string(fields.size())});
            continue;
        }
        if (!usable_doc_id(fields[0])) {
            result.errors.push_back({line_no, "doc_id must be non-empty without whitespace, ':' or ','"});
            continue;
        }
        auto date = parse_date(fields[1]);
        if (!date) {
            result.errors.push_back({line_no, "invalid sold_date '" + std::string(fields[1]) + "'"});
            continue;
        }
        std::string id(fields[0]);
        if (!seen.insert(id).second)
            throw DuplicateDocument(line_no, id);
        result.documents.push_back(
            ItemDocument::make(std::move(id), *date, std::string(fields[2]), std::string(fields[3])));
    }
    return result;
}

void write_corpus(std::ostream& out, const std::vector<ItemDocument>& docs)
{
    for (const auto& doc : docs)
        out << doc.doc_id << '\t' << format_date(doc.sold_date) << '\t' << doc.category << '\t' << doc.title
            << '\n';
}

std::vector<MonthlyCorpus> segment_by_month(std::vector<ItemDocument> docs)
{
    std::map<MonthKey, std::vector<ItemDocument>> buckets;
    for (auto& doc : docs)
        buckets[doc.month()].push_back(std::move(doc));

    std::vector<MonthlyCorpus> partitions;
    partitions.reserve(buckets.size());
    for (auto& [month, members] : buckets)
        partitions.push_back(MonthlyCorpus{month, std::move(members)});
    return partitions;
}

Vocabulary Vocabulary::build(const std::vector<ItemDocument>& docs, std::uint64_t min_count)
{
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& doc : docs)
        for (const auto& token : doc.tokens)
            ++counts[token];

    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [term, count] : counts)
        if (count >= std::max<std::uint64_t>(min_count, 1))
            kept.emplace_back(term, count);
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });

    Vocabulary vocab;
    vocab.terms_.reserve(kept.size());
    vocab.counts_.reserve(kept.size());
    for (auto& [term, count] : kept) {
        vocab.ids_.emplace(term, static_cast<std::uint32_t>(vocab.terms_.size()));
        vocab.terms_.push_back(std::move(term));
        vocab.counts_.push_back(count);
    }
    return vocab;
}

bool Vocabulary::contains(std::string_view term) const
{
    return ids_.find(std::string(term)) != ids_.end();
}

std::optional<Vocabulary::Entry> Vocabulary::find(std::string_view term) const
{
    auto it = ids_.find(std::string(term));
    if (it == ids_.end())
        return std::nullopt;
    return Entry{it->second, counts_[it->second]};
}

} // namespace evrec
