#pragma once

#include "evrec/corpus.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evrec {

struct Posting {
    std::string doc_id;
    std::uint32_t tf = 0;

    friend bool operator==(const Posting&, const Posting&) = default;
};

/// Term -> postings over one month partition. Immutable once built.
///
/// Postings are sorted by doc_id (byte order) so a document's tf is a
/// binary search away. The document store keeps each document's tokens,
/// which is all the ranking layer needs for length normalization.
class InvertedIndex {
public:
    InvertedIndex() = default;

    static InvertedIndex build(const MonthlyCorpus& corpus);

    const MonthKey& month() const { return month_; }
    std::size_t doc_count() const { return documents_.size(); }

    /// Empty span for unknown terms.
    std::span<const Posting> postings(std::string_view term) const;
    std::size_t doc_freq(std::string_view term) const { return postings(term).size(); }

    /// Raw occurrence count. Throws UnknownDocument.
    std::uint32_t tf(std::string_view doc_id, std::string_view term) const;

    /// ln((N + 1) / (df + 1)) + 1; strictly positive, defined for unseen terms.
    double idf(std::string_view term) const;

    /// Union of the postings of `terms` (OR semantics).
    std::set<std::string> candidate_docs(std::span<const std::string> terms) const;

    bool has_document(std::string_view doc_id) const;
    /// Throws UnknownDocument.
    const ItemDocument& document(std::string_view doc_id) const;
    /// Token count |d|. Throws UnknownDocument.
    std::size_t doc_length(std::string_view doc_id) const;
    double avg_doc_length() const;

    const std::map<std::string, ItemDocument, std::less<>>& documents() const { return documents_; }
    const std::map<std::string, std::vector<Posting>, std::less<>>& term_postings() const { return postings_; }

    friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

private:
    MonthKey month_;
    std::map<std::string, ItemDocument, std::less<>> documents_;
    std::map<std::string, std::vector<Posting>, std::less<>> postings_;
    std::uint64_t total_tokens_ = 0;
};

/// INDEXv1 text format, see README.
void save_index(std::ostream& out, const InvertedIndex& index);

/// Throws FormatError with the offending line; also rejects files whose
/// postings disagree with their document lines.
InvertedIndex load_index(std::istream& in);

} // namespace evrec
