#pragma once

#include "evrec/embedding.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evrec {

class StopwordList {
public:
    StopwordList() = default;
    explicit StopwordList(std::set<std::string, std::less<>> words);

    /// The English function-word list bundled with the library.
    static const StopwordList& builtin();

    /// One lowercase word per line; '#' starts a comment, blank lines are
    /// skipped. Throws FormatError on words with whitespace or uppercase.
    static StopwordList load(std::istream& in);

    bool contains(std::string_view term) const { return words_.find(term) != words_.end(); }
    std::size_t size() const { return words_.size(); }
    const std::set<std::string, std::less<>>& words() const { return words_; }

private:
    std::set<std::string, std::less<>> words_;
};

struct ExpansionConfig {
    /// Candidates kept per seed term, 1..4.
    std::size_t k = 4;
    /// Strict lower bound on similarity, in (0, 1).
    double min_sim = 0.6;

    /// Throws InvalidArgument.
    void validate() const;

    friend bool operator==(const ExpansionConfig&, const ExpansionConfig&) = default;
};

struct SeedTerm {
    std::string term;
    bool stopword = false;

    friend bool operator==(const SeedTerm&, const SeedTerm&) = default;
};

/// Seed terms q (weight 1) plus expansion terms q' weighted by S(j, q).
class ExpandedQuery {
public:
    ExpandedQuery() = default;

    /// Normalizes and de-duplicates the seed keywords (each entry may hold
    /// several words). Throws EmptySeed.
    static ExpandedQuery seed_only(std::span<const std::string> seed, const StopwordList& stopwords,
                                   ExpansionConfig config = {});

    const std::vector<SeedTerm>& seed_terms() const { return seed_; }
    const std::map<std::string, double, std::less<>>& expansion_terms() const { return expansion_; }
    const ExpansionConfig& config() const { return config_; }

    /// Seed terms that were not in the model vocabulary.
    const std::vector<std::string>& oov_seed_terms() const { return oov_; }
    /// Per seed term, the candidates it contributed after filtering.
    const std::map<std::string, std::vector<std::string>, std::less<>>& nominations() const { return nominations_; }

    bool is_seed(std::string_view term) const;
    bool contains(std::string_view term) const;

    /// 1 for seed terms, S(term, q) for expansion terms. Throws NotInQuery.
    double delta(std::string_view term) const;

    /// q ∪ q' in ascending term order.
    std::vector<std::string> terms() const;

    /// Expansion terms by weight descending, ties by term ascending.
    std::vector<std::pair<std::string, double>> ranked_expansions() const;

    /// Same seed terms with no expansion.
    ExpandedQuery without_expansion() const;

    friend bool operator==(const ExpandedQuery&, const ExpandedQuery&) = default;

private:
    friend ExpandedQuery expand_query(std::span<const std::string>, const EmbeddingModel&, const StopwordList&,
                                      ExpansionConfig);
    friend ExpandedQuery with_expansions(ExpandedQuery, std::map<std::string, double, std::less<>>);

    std::vector<SeedTerm> seed_;
    std::map<std::string, double, std::less<>> expansion_;
    ExpansionConfig config_;
    std::vector<std::string> oov_;
    std::map<std::string, std::vector<std::string>, std::less<>> nominations_;
};

/// Selects q' from the model: for every non-stop seed term in vocabulary,
/// its top-k neighbors above min_sim, minus stop words and seed terms. Each
/// selected term j is weighted max over non-stop in-vocabulary seed terms m
/// of sim(j, m). Throws EmptySeed, AllStopwords, InvalidArgument.
ExpandedQuery expand_query(std::span<const std::string> seed, const EmbeddingModel& model,
                           const StopwordList& stopwords, ExpansionConfig config = {});

/// Attaches hand-chosen expansion weights to a query; used where q' comes
/// from somewhere other than a model. Weights must lie in (0, 1] and terms
/// must not be seed terms (InvalidArgument otherwise).
ExpandedQuery with_expansions(ExpandedQuery query, std::map<std::string, double, std::less<>> weights);

/// "<term>\t<weight>\t<seed|expansion>" lines: seeds in input order, then
/// expansions by weight descending.
void write_query_dump(std::ostream& out, const ExpandedQuery& query);

} // namespace evrec
