#include "evrec/eval.hpp"

#include "evrec/errors.hpp"

#include <cstdio>
#include <ostream>

namespace evrec {

namespace {

std::string fixed(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

} // namespace

RecallReport compare_recall(const InvertedIndex& index, const ExpandedQuery& query, const Scorer& scorer,
                            double threshold)
{
    RecallReport report;
    for (const auto& s : query.seed_terms())
        report.seed_terms.push_back(s.term);
    report.expansion_terms = query.ranked_expansions();
    report.threshold = threshold;
    report.scorer = scorer;
    report.month = index.month();

    report.seed_hits = retrieve(index, query.without_expansion(), scorer, threshold).size();
    report.expanded_hits = retrieve(index, query, scorer, threshold).size();
    if (report.seed_hits > 0) {
        const auto base = static_cast<double>(report.seed_hits);
        report.increase_pct = 100.0 * (static_cast<double>(report.expanded_hits) - base) / base;
    }
    return report;
}

RecallReport recall_increase(const InvertedIndex& index, std::span<const std::string> seed,
                             const EmbeddingModel& model, const StopwordList& stopwords, ExpansionConfig config,
                             double threshold, const Scorer& scorer)
{
    auto query = expand_query(seed, model, stopwords, config);
    auto report = compare_recall(index, query, scorer, threshold);
    if (!report.increase_pct)
        throw UndefinedBaseline("seed-only query retrieves no documents above threshold " +
                                fixed(threshold, 6));
    return report;
}

void write_report(std::ostream& out, const RecallReport& report)
{
    out << "month=" << report.month.to_string() << '\n';
    out << "scorer=" << report.scorer.name() << '\n';
    if (const auto* p = std::get_if<Bm25>(&report.scorer.kind()))
        out << "bm25_k1=" << fixed(p->k1, 6) << "\nbm25_b=" << fixed(p->b, 6) << '\n';
    out << "threshold=" << fixed(report.threshold, 6) << '\n';
    out << "seed_terms=";
    for (std::size_t i = 0; i < report.seed_terms.size(); ++i)
        out << (i ? "," : "") << report.seed_terms[i];
    out << "\nexpansion_terms=";
    for (std::size_t i = 0; i < report.expansion_terms.size(); ++i)
        out << (i ? "," : "") << report.expansion_terms[i].first << ':' << fixed(report.expansion_terms[i].second, 6);
    out << "\nseed_hits=" << report.seed_hits << '\n';
    out << "expanded_hits=" << report.expanded_hits << '\n';
    out << "increase_pct=" << (report.increase_pct ? fixed(*report.increase_pct, 6) : "undefined") << '\n';
    out << "seed_hits=" << report.seed_hits << " expanded_hits=" << report.expanded_hits
        << " increase=" << (report.increase_pct ? fixed(*report.increase_pct, 1) + "%" : "undefined") << '\n';
}

} // namespace evrec
