#include "evrec/expansion.hpp"

#include "evrec/corpus.hpp"
#include "evrec/errors.hpp"
#include "stopwords_data.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace evrec {

namespace {

std::string fixed6(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

} // namespace

StopwordList::StopwordList(std::set<std::string, std::less<>> words) : words_(std::move(words)) {}

const StopwordList& StopwordList::builtin()
{
    static const StopwordList list = [] {
        std::istringstream in{std::string(detail::builtin_stopword_text())};
        return load(in);
    }();
    return list;
}

StopwordList StopwordList::load(std::istream& in)
{
    std::set<std::string, std::less<>> words;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string word = line.substr(first, last - first + 1);
        auto tokens = tokenize(word);
        if (tokens.size() != 1 || tokens.front() != word)
            throw FormatError(line_no, "stop word must be a single lowercase token: '" + word + "'");
        words.insert(std::move(word));
    }
    return StopwordList(std::move(words));
}

void ExpansionConfig::validate() const
{
    if (k < 1 || k > 4)
        throw InvalidArgument("expansion k must be in 1..4, got " + std::to_string(k));
    if (!(min_sim > 0.0 && min_sim < 1.0))
        throw InvalidArgument("expansion min_sim must be in (0, 1)");
}

ExpandedQuery ExpandedQuery::seed_only(std::span<const std::string> seed, const StopwordList& stopwords,
                                       ExpansionConfig config)
{
    config.validate();
    ExpandedQuery query;
    query.config_ = config;
    for (const auto& entry : seed)
        for (auto& term : tokenize(entry))
            if (!query.is_seed(term)) {
                bool stop = stopwords.contains(term);
                query.seed_.push_back({std::move(term), stop});
            }
    if (query.seed_.empty())
        throw EmptySeed("seed keywords are empty after normalization");
    return query;
}

bool ExpandedQuery::is_seed(std::string_view term) const
{
    return std::any_of(seed_.begin(), seed_.end(), [&](const SeedTerm& s) { return s.term == term; });
}

bool ExpandedQuery::contains(std::string_view term) const
{
    return is_seed(term) || expansion_.find(term) != expansion_.end();
}

double ExpandedQuery::delta(std::string_view term) const
{
    if (is_seed(term))
        return 1.0;
    if (auto it = expansion_.find(term); it != expansion_.end())
        return it->second;
    throw NotInQuery(std::string(term));
}

std::vector<std::string> ExpandedQuery::terms() const
{
    std::vector<std::string> all;
    all.reserve(seed_.size() + expansion_.size());
    for (const auto& s : seed_)
        all.push_back(s.term);
    for (const auto& [term, weight] : expansion_)
        all.push_back(term);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<std::pair<std::string, double>> ExpandedQuery::ranked_expansions() const
{
    std::vector<std::pair<std::string, double>> ranked(expansion_.begin(), expansion_.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranked;
}

ExpandedQuery ExpandedQuery::without_expansion() const
{
    ExpandedQuery copy = *this;
    copy.expansion_.clear();
    copy.nominations_.clear();
    return copy;
}

ExpandedQuery expand_query(std::span<const std::string> seed, const EmbeddingModel& model,
                           const StopwordList& stopwords, ExpansionConfig config)
{
    ExpandedQuery query = ExpandedQuery::seed_only(seed, stopwords, config);

    std::vector<std::string> anchors;
    for (const auto& s : query.seed_) {
        if (s.stopword)
            continue;
        if (model.contains(s.term))
            anchors.push_back(s.term);
        else
            query.oov_.push_back(s.term);
    }
    if (std::all_of(query.seed_.begin(), query.seed_.end(), [](const SeedTerm& s) { return s.stopword; }))
        throw AllStopwords("every seed term is a stop word");

    for (const auto& anchor : anchors) {
        auto& picked = query.nominations_[anchor];
        for (auto& neighbor : most_similar(model, anchor, config.k, config.min_sim)) {
            if (stopwords.contains(neighbor.term) || query.is_seed(neighbor.term))
                continue;
            picked.push_back(neighbor.term);
            query.expansion_.emplace(neighbor.term, 0.0);
        }
    }

    // S(j, q): best similarity to any non-stop seed term, not only the one
    // that nominated j.
    for (auto& [term, weight] : query.expansion_) {
        double best = -1.0;
        for (const auto& anchor : anchors)
            best = std::max(best, similarity(model, term, anchor));
        weight = best;
    }
    return query;
}

ExpandedQuery with_expansions(ExpandedQuery query, std::map<std::string, double, std::less<>> weights)
{
    for (const auto& [term, weight] : weights) {
        if (!(weight > 0.0 && weight <= 1.0))
            throw InvalidArgument("expansion weight for '" + term + "' must be in (0, 1]");
        if (query.is_seed(term))
            throw InvalidArgument("expansion term '" + term + "' is already a seed term");
    }
    query.expansion_ = std::move(weights);
    query.nominations_.clear();
    return query;
}

void write_query_dump(std::ostream& out, const ExpandedQuery& query)
{
    for (const auto& s : query.seed_terms())
        out << s.term << '\t' << fixed6(1.0) << "\tseed\n";
    for (const auto& [term, weight] : query.ranked_expansions())
        out << term << '\t' << fixed6(weight) << "\texpansion\n";
}

} // namespace evrec
