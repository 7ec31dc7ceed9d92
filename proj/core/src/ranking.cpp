#include "evrec/ranking.hpp"

#include "evrec/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_map>

namespace evrec {

namespace {

std::string fixed6(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

bool ranks_before(const RankedResult& a, const RankedResult& b)
{
    return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
}

} // namespace

Scorer::Scorer(Bm25 params) : kind_(params)
{
    if (!(params.k1 > 0.0))
        throw InvalidArgument("bm25 k1 must be positive");
    if (!(params.b >= 0.0 && params.b <= 1.0))
        throw InvalidArgument("bm25 b must be in [0, 1]");
}

double Scorer::term_weight(std::uint32_t tf, double idf, std::size_t doc_len, double avg_doc_len) const
{
    const auto f = static_cast<double>(tf);
    if (const auto* p = std::get_if<Bm25>(&kind_)) {
        const double norm_len = avg_doc_len > 0.0 ? static_cast<double>(doc_len) / avg_doc_len : 0.0;
        return idf * f * (p->k1 + 1.0) / (f + p->k1 * (1.0 - p->b + p->b * norm_len));
    }
    return f * idf;
}

RankedResult score_document(const InvertedIndex& index, std::string_view doc_id, const ExpandedQuery& query,
                            const Scorer& scorer)
{
    const std::size_t doc_len = index.doc_length(doc_id);
    const double avgdl = index.avg_doc_length();

    RankedResult result;
    result.doc_id = std::string(doc_id);
    for (const auto& term : query.terms()) {
        const auto tf = index.tf(doc_id, term);
        if (tf == 0)
            continue;
        const double c = scorer.term_weight(tf, index.idf(term), doc_len, avgdl) * query.delta(term);
        result.score += c;
        result.matched_terms.push_back({term, c});
    }
    return result;
}

std::vector<RankedResult> retrieve(const InvertedIndex& index, const ExpandedQuery& query, const Scorer& scorer,
                                   double threshold, std::optional<std::size_t> limit)
{
    if (!(threshold >= 0.0))
        throw InvalidArgument("retrieval threshold must be non-negative");

    const double avgdl = index.avg_doc_length();
    std::unordered_map<std::string_view, RankedResult> accumulators;

    // Terms ascending, so each document accumulates in the same order
    // score_document uses.
    for (const auto& term : query.terms()) {
        const double idf = index.idf(term);
        const double delta = query.delta(term);
        for (const auto& posting : index.postings(term)) {
            auto [it, fresh] = accumulators.try_emplace(posting.doc_id);
            auto& acc = it->second;
            if (fresh)
                acc.doc_id = posting.doc_id;
            const double c = scorer.term_weight(posting.tf, idf, index.doc_length(posting.doc_id), avgdl) * delta;
            acc.score += c;
            acc.matched_terms.push_back({term, c});
        }
    }

    std::vector<RankedResult> results;
    results.reserve(accumulators.size());
    for (auto& [id, acc] : accumulators)
        if (acc.score > threshold)
            results.push_back(std::move(acc));
    std::sort(results.begin(), results.end(), ranks_before);
    if (limit && results.size() > *limit)
        results.resize(*limit);
    return results;
}

void write_results(std::ostream& out, const std::vector<RankedResult>& results)
{
    std::size_t rank = 0;
    for (const auto& r : results) {
        out << ++rank << '\t' << r.doc_id << '\t' << fixed6(r.score) << '\t';
        for (std::size_t i = 0; i < r.matched_terms.size(); ++i) {
            if (i)
                out << ',';
            out << r.matched_terms[i].term << ':' << fixed6(r.matched_terms[i].contribution);
        }
        out << '\n';
    }
}

} // namespace evrec
