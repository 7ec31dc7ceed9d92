#pragma once

#include "evrec/expansion.hpp"
#include "evrec/index.hpp"
#include "evrec/ranking.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace evrec {

/// Retrieved-set growth when the expanded query replaces the seed-only one
/// at the same threshold and scorer. "Recall" here is the size of the set
/// above threshold; no relevance labels are involved.
struct RecallReport {
    std::vector<std::string> seed_terms;
    std::vector<std::pair<std::string, double>> expansion_terms;
    std::size_t seed_hits = 0;
    std::size_t expanded_hits = 0;
    /// 100 · (expanded − seed) / seed; empty when seed_hits is 0.
    std::optional<double> increase_pct;
    double threshold = 0.0;
    Scorer scorer;
    MonthKey month;

    friend bool operator==(const RecallReport&, const RecallReport&) = default;
};

/// Runs retrieval for `query` and for its seed-only counterpart. Never
/// throws on a zero baseline; increase_pct is left empty instead.
RecallReport compare_recall(const InvertedIndex& index, const ExpandedQuery& query, const Scorer& scorer,
                            double threshold);

/// Expands `seed` with the model and measures the recall increase.
/// Throws UndefinedBaseline when the seed-only query retrieves nothing.
RecallReport recall_increase(const InvertedIndex& index, std::span<const std::string> seed,
                             const EmbeddingModel& model, const StopwordList& stopwords, ExpansionConfig config,
                             double threshold, const Scorer& scorer = {});

/// key=value record followed by the one-line summary
/// "seed_hits=4 expanded_hits=13 increase=225.0%".
void write_report(std::ostream& out, const RecallReport& report);

} // namespace evrec
