#pragma once

#include "evrec/expansion.hpp"
#include "evrec/index.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace evrec {

struct TfIdf {
    friend bool operator==(const TfIdf&, const TfIdf&) = default;
};

struct Bm25 {
    double k1 = 1.2;
    double b = 0.75;

    friend bool operator==(const Bm25&, const Bm25&) = default;
};

/// Per-term document weight; either way the result is multiplied by δ(i, q).
class Scorer {
public:
    Scorer() = default;
    Scorer(TfIdf kind) : kind_(kind) {}
    /// Throws InvalidArgument unless k1 > 0 and 0 <= b <= 1.
    Scorer(Bm25 params);

    static Scorer tfidf() { return Scorer(TfIdf{}); }
    static Scorer bm25(double k1 = 1.2, double b = 0.75) { return Scorer(Bm25{k1, b}); }

    bool is_bm25() const { return std::holds_alternative<Bm25>(kind_); }
    const std::variant<TfIdf, Bm25>& kind() const { return kind_; }
    std::string name() const { return is_bm25() ? "bm25" : "tfidf"; }

    /// Weight of one term in one document before δ.
    /// tfidf: tf · idf. bm25: idf · tf(k1+1) / (tf + k1(1 − b + b|d|/avgdl)).
    double term_weight(std::uint32_t tf, double idf, std::size_t doc_len, double avg_doc_len) const;

    friend bool operator==(const Scorer&, const Scorer&) = default;

private:
    std::variant<TfIdf, Bm25> kind_;
};

struct TermContribution {
    std::string term;
    double contribution;

    friend bool operator==(const TermContribution&, const TermContribution&) = default;
};

struct RankedResult {
    std::string doc_id;
    double score = 0.0;
    /// Terms with tf > 0, ascending by term; score is their sum in this order.
    std::vector<TermContribution> matched_terms;

    friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

/// Σ over i ∈ q ∪ q' of weight(d, i) · δ(i, q). Throws UnknownDocument.
RankedResult score_document(const InvertedIndex& index, std::string_view doc_id, const ExpandedQuery& query,
                            const Scorer& scorer = {});

/// Documents matching any query term whose score is strictly above
/// threshold, best first, ties by doc_id. Term-at-a-time over postings.
/// Throws InvalidArgument on a negative threshold.
std::vector<RankedResult> retrieve(const InvertedIndex& index, const ExpandedQuery& query, const Scorer& scorer = {},
                                   double threshold = 0.0, std::optional<std::size_t> limit = std::nullopt);

/// "<rank>\t<doc_id>\t<score>\t<term:contribution,...>", 1-based rank,
/// six decimals.
void write_results(std::ostream& out, const std::vector<RankedResult>& results);

} // namespace evrec
