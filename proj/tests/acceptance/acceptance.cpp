#include "evrec/evrec.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace evrec;
using evrec::testing::BruteForceScorer;
using evrec::testing::doc_of;

namespace {

/// Thrown by check(); carries the first violation found.
struct Violation {
    std::string detail;
};

void check(bool ok, const std::string& detail)
{
    if (!ok)
        throw Violation{detail};
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct RandomTrial {
    MonthlyCorpus corpus;
    std::vector<ExpandedQuery> queries;
};

/// The shared trial set for the oracle and monotonicity criteria: random
/// corpora with seed-only queries and their expanded counterparts.
std::vector<RandomTrial> random_trials()
{
    std::mt19937_64 rng(20180214);
    std::vector<RandomTrial> trials;
    for (int round = 0; round < 25; ++round) {
        std::uniform_int_distribution<std::size_t> docs(50, 200);
        std::uniform_int_distribution<std::size_t> vocab(10, 50);
        const std::size_t v = vocab(rng);
        RandomTrial trial{evrec::testing::random_corpus(rng, docs(rng), v, 2, 10), {}};

        std::uniform_int_distribution<std::size_t> term(0, v - 1);
        std::uniform_int_distribution<int> count(1, 4);
        std::uniform_real_distribution<double> weight(0.6, 1.0);
        for (int q = 0; q < 4; ++q) {
            std::set<std::string> seed_terms;
            for (int i = count(rng); i > 0; --i)
                seed_terms.insert(evrec::testing::term_name(term(rng)));
            std::vector<std::string> seed(seed_terms.begin(), seed_terms.end());
            auto base = ExpandedQuery::seed_only(seed, StopwordList{});

            std::map<std::string, double, std::less<>> expansions;
            for (int i = count(rng); i > 0; --i) {
                auto t = evrec::testing::term_name(term(rng));
                if (!seed_terms.contains(t))
                    expansions[t] = std::nextafter(weight(rng), 2.0);
            }
            trial.queries.push_back(base);
            trial.queries.push_back(with_expansions(base, expansions));
        }
        trials.push_back(std::move(trial));
    }
    return trials;
}

const std::vector<Scorer>& scorers()
{
    static const std::vector<Scorer> all{Scorer::tfidf(), Scorer::bm25(), Scorer::bm25(2.0, 0.3)};
    return all;
}

const std::vector<double> kThresholds{0.0, 0.5, 2.0, 5.0};

std::string criterion_oracle(const std::vector<RandomTrial>& trials)
{
    const auto start = std::chrono::steady_clock::now();
    std::size_t comparisons = 0;
    for (const auto& trial : trials) {
        check(trial.corpus.documents.size() >= 50 && trial.corpus.documents.size() <= 200, "corpus size");
        const auto index = InvertedIndex::build(trial.corpus);
        const BruteForceScorer oracle{trial.corpus.documents};
        for (const auto& query : trial.queries) {
            const auto weights = evrec::testing::query_weights(query);
            for (const auto& scorer : scorers()) {
                for (double threshold : kThresholds) {
                    const auto got = retrieve(index, query, scorer, threshold);
                    const auto want = oracle.retrieve(weights, scorer, threshold);
                    check(got.size() == want.size(), "result count differs");
                    for (std::size_t i = 0; i < got.size(); ++i) {
                        check(got[i].doc_id == want[i].doc_id, "order differs at rank " + std::to_string(i + 1));
                        check(std::abs(got[i].score - want[i].score) <= 1e-9,
                              "score differs for " + got[i].doc_id);
                    }
                    ++comparisons;
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    check(elapsed < 10.0, "took " + std::to_string(elapsed) + " s");
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu corpora, %zu comparisons, %.2f s", trials.size(), comparisons, elapsed);
    return buf;
}

std::string criterion_monotonicity(const std::vector<RandomTrial>& trials)
{
    std::size_t triples = 0;
    for (const auto& trial : trials) {
        const auto index = InvertedIndex::build(trial.corpus);
        for (std::size_t q = 0; q + 1 < trial.queries.size(); q += 2) {
            const auto& seed_only = trial.queries[q];
            const auto& expanded = trial.queries[q + 1];
            for (const auto& scorer : scorers()) {
                for (double threshold : kThresholds) {
                    std::set<std::string> expanded_ids;
                    for (const auto& hit : retrieve(index, expanded, scorer, threshold))
                        expanded_ids.insert(hit.doc_id);
                    for (const auto& hit : retrieve(index, seed_only, scorer, threshold))
                        check(expanded_ids.contains(hit.doc_id), hit.doc_id + " lost after expansion");
                    ++triples;
                }
                for (const auto& doc : trial.corpus.documents) {
                    const double before = score_document(index, doc.doc_id, seed_only, scorer).score;
                    const double after = score_document(index, doc.doc_id, expanded, scorer).score;
                    check(after >= before, "score of " + doc.doc_id + " decreased");
                }
            }
        }
    }
    return std::to_string(triples) + " corpus/query/threshold triples, 0 violations";
}

/// Random model whose words cluster around a few directions so that many
/// pairs clear the similarity bar. Some vocabulary words are stop words.
EmbeddingModel clustered_model(std::mt19937_64& rng, const std::vector<std::string>& words, std::size_t dim)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> centers(4, std::vector<double>(dim));
    for (auto& c : centers)
        for (auto& x : c)
            x = normal(rng);
    std::uniform_int_distribution<std::size_t> center(0, centers.size() - 1);
    std::uniform_real_distribution<double> spread(0.2, 0.9);

    EmbeddingModel model(dim, MonthKey{2018, 2});
    for (const auto& w : words) {
        const auto& c = centers[center(rng)];
        const double s = spread(rng);
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i)
            v[i] = c[i] + s * normal(rng);
        model.add(w, v);
    }
    return model;
}

/// Expansion from first principles: per usable seed term, every other word
/// scored by long-double cosine, top k above the bar, union, then stop words
/// and seed terms removed; weights are the max cosine over usable seeds.
std::map<std::string, double> brute_force_expansion(const EmbeddingModel& model, const std::vector<std::string>& seeds,
                                                    const StopwordList& stop, const ExpansionConfig& cfg)
{
    auto row = [&](const std::string& w) {
        auto span = model.vector(w);
        return std::vector<double>(span.begin(), span.end());
    };
    std::vector<std::string> usable;
    for (const auto& s : seeds)
        if (!stop.contains(s) && model.contains(s))
            usable.push_back(s);

    std::set<std::string> chosen;
    for (const auto& s : usable) {
        std::vector<std::pair<double, std::string>> scored;
        for (const auto& w : model.words()) {
            if (w == s)
                continue;
            const double c = evrec::testing::hand_cosine(row(s), row(w));
            if (c > cfg.min_sim)
                scored.emplace_back(c, w);
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (std::size_t i = 0; i < scored.size() && i < cfg.k; ++i)
            chosen.insert(scored[i].second);
    }

    std::map<std::string, double> result;
    for (const auto& w : chosen) {
        if (stop.contains(w) || std::find(seeds.begin(), seeds.end(), w) != seeds.end())
            continue;
        double best = -1.0;
        for (const auto& s : usable)
            best = std::max(best, evrec::testing::hand_cosine(row(s), row(w)));
        result[w] = best;
    }
    return result;
}

std::string criterion_expansion_constraints()
{
    const auto& stop = StopwordList::builtin();
    const std::vector<std::string> stop_words{"the", "and", "for", "with", "of", "to"};
    for (const auto& w : stop_words)
        check(stop.contains(w), "builtin list lacks '" + w + "'");

    std::mt19937_64 rng(93);
    std::size_t queries = 0;
    std::size_t expansions = 0;
    for (int round = 0; round < 60; ++round) {
        std::vector<std::string> words;
        for (int i = 0; i < 36; ++i)
            words.push_back("w" + std::to_string(i));
        words.insert(words.end(), stop_words.begin(), stop_words.end());
        const auto model = clustered_model(rng, words, 6);

        std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
        std::uniform_int_distribution<int> seed_count(1, 4);
        std::vector<std::string> seeds;
        for (int i = seed_count(rng); i > 0; --i) {
            auto w = words[pick(rng)];
            if (std::find(seeds.begin(), seeds.end(), w) == seeds.end())
                seeds.push_back(w);
        }
        if (round % 5 == 0)
            seeds.push_back("unseen");
        if (std::all_of(seeds.begin(), seeds.end(), [&](const auto& s) { return stop.contains(s); }))
            seeds.push_back("w0");

        for (std::size_t k = 1; k <= 4; ++k) {
            const ExpansionConfig cfg{k, 0.6};
            const auto query = expand_query(seeds, model, stop, cfg);
            ++queries;

            for (const auto& s : query.seed_terms())
                check(query.delta(s.term) == 1.0, "seed delta of " + s.term);
            for (const auto& [seed, nominated] : query.nominations())
                check(nominated.size() <= k, seed + " nominated more than k terms");

            const auto expected = brute_force_expansion(model, seeds, stop, cfg);
            check(query.expansion_terms().size() == expected.size(), "expansion set size differs from brute force");
            for (const auto& [term, weight] : query.expansion_terms()) {
                check(expected.contains(term), "unexpected expansion term " + term);
                check(weight > 0.6, term + " weight not above 0.6");
                check(!stop.contains(term), "stop word " + term + " expanded");
                check(!query.is_seed(term), "seed term " + term + " duplicated");
                check(std::abs(query.delta(term) - expected.at(term)) <= 1e-9, "delta of " + term);
                ++expansions;
            }
        }
    }
    return std::to_string(queries) + " queries, " + std::to_string(expansions) + " expansion terms checked";
}

std::string criterion_hand_values()
{
    const auto index = InvertedIndex::build(
        MonthlyCorpus{MonthKey{2018, 2}, {doc_of("d1", {"a", "a", "b"}), doc_of("d2", {"b", "c"})}});
    const std::vector<std::string> seed_a{"a"};
    const std::vector<std::string> seed_z{"z"};
    const double seed_score = score_document(index, "d1", ExpandedQuery::seed_only(seed_a, StopwordList{})).score;
    const double expansion_score =
        score_document(index, "d1", with_expansions(ExpandedQuery::seed_only(seed_z, StopwordList{}), {{"b", 0.8}}))
            .score;
    check(std::abs(seed_score - 2.810930) <= 1e-6, "seed-term score " + std::to_string(seed_score));
    check(std::abs(seed_score - 2.0 * (std::log(3.0 / 2.0) + 1.0)) <= 1e-12, "seed-term score formula");
    check(std::abs(expansion_score - 0.8) <= 1e-6, "expansion-term score " + std::to_string(expansion_score));
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6f and %.6f", seed_score, expansion_score);
    return buf;
}

bool identical(const EmbeddingModel& a, const EmbeddingModel& b)
{
    if (a.words() != b.words() || a.dim() != b.dim())
        return false;
    for (std::size_t row = 0; row < a.size(); ++row) {
        auto x = a.vector(row);
        auto y = b.vector(row);
        if (!std::equal(x.begin(), x.end(), y.begin()))
            return false;
    }
    return true;
}

std::string criterion_embedding_sanity()
{
    const auto start = std::chrono::steady_clock::now();
    const auto corpus = evrec::testing::cooccurrence_corpus();
    check(corpus.documents.size() == 500, "corpus size");
    const auto first = train(corpus);
    const auto second = train(corpus);
    const double ab = similarity(first, "a", "b");
    const double ac = similarity(first, "a", "c");
    check(ab > ac, "sim(a,b)=" + std::to_string(ab) + " not above sim(a,c)=" + std::to_string(ac));
    check(identical(first, second), "retraining is not bit-identical");
    const double elapsed = seconds_since(start);
    check(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
    char buf[128];
    std::snprintf(buf, sizeof buf, "sim(a,b)=%.4f sim(a,c)=%.4f, bit-identical, %.2f s", ab, ac, elapsed);
    return buf;
}

std::string criterion_seasonal_drift()
{
    const auto [feb, aug] = evrec::testing::drift_corpora("valentine", "cupid", "birthday");
    const auto feb_top = most_similar(train(feb), "valentine", 1, -1.0);
    const auto aug_top = most_similar(train(aug), "valentine", 1, -1.0);
    check(feb_top.size() == 1 && aug_top.size() == 1, "no neighbors");
    check(feb_top[0].term == "cupid", feb.month.to_string() + " top-1 is " + feb_top[0].term);
    check(aug_top[0].term == "birthday", aug.month.to_string() + " top-1 is " + aug_top[0].term);
    return feb.month.to_string() + ": " + feb_top[0].term + ", " + aug.month.to_string() + ": " + aug_top[0].term;
}

std::string criterion_recall_arithmetic()
{
    const auto scenario = evrec::testing::recall_scenario();
    check(scenario.corpus.documents.size() == 13, "scenario size");
    const auto index = InvertedIndex::build(scenario.corpus);
    const std::vector<std::string> seed{"school"};
    const auto report = recall_increase(index, seed, scenario.model, StopwordList::builtin(), {}, 0.0);
    check(report.seed_hits == 4, "seed_hits=" + std::to_string(report.seed_hits));
    check(report.expanded_hits == 13, "expanded_hits=" + std::to_string(report.expanded_hits));
    check(report.increase_pct && *report.increase_pct == 225.0, "increase is not exactly 225.0");

    const auto empty = recall_increase(index, seed, scenario.model, StopwordList::builtin(), {4, 0.9}, 0.0);
    check(empty.expansion_terms.empty(), "expansion not empty at min_sim 0.9");
    check(empty.increase_pct && *empty.increase_pct == 0.0, "empty expansion increase is not exactly 0.0");

    std::ostringstream out;
    write_report(out, report);
    check(out.str().find("seed_hits=4 expanded_hits=13 increase=225.0%\n") != std::string::npos, "summary line");
    return "seed_hits=4 expanded_hits=13 increase_pct=225.0; empty expansion 0.0";
}

template <typename E>
void expect_error(const std::function<void()>& load, std::size_t line, const std::string& label)
{
    try {
        load();
    } catch (const E& e) {
        check(e.line() == line, label + ": reported line " + std::to_string(e.line()) + ", want " +
                                    std::to_string(line));
        return;
    } catch (const std::exception& e) {
        throw Violation{label + ": wrong error type: " + e.what()};
    }
    throw Violation{label + ": accepted"};
}

void expect_vectors_error_line(const std::string& text, std::size_t line, bool dimension)
{
    auto load = [text] {
        std::istringstream in(text);
        load_vectors(in);
    };
    if (dimension)
        expect_error<DimensionMismatch>(load, line, "vectors");
    else
        expect_error<FormatError>(load, line, "vectors");
}

void expect_index_error_line(const std::string& text, std::size_t line)
{
    expect_error<FormatError>(
        [text] {
            std::istringstream in(text);
            load_index(in);
        },
        line, "index");
}

std::string criterion_round_trips()
{
    std::size_t cases = 0;

    // vectors: trained model plus awkward magnitudes
    std::vector<EmbeddingModel> models;
    models.push_back(train(evrec::testing::drift_corpora("valentine", "cupid", "birthday").first));
    models.push_back(evrec::testing::model_of(
        {{"tiny", {1e-300, -4.9e-324, 0.0}}, {"huge", {1.7e308, -1e200, 3.25}}, {"third", {1.0 / 3.0, 2.0 / 7.0, -0.1}}}));
    for (const auto& model : models) {
        std::stringstream buf;
        save_vectors(buf, model);
        const auto loaded = load_vectors(buf);
        check(loaded.words() == model.words(), "vocabulary changed");
        for (std::size_t row = 0; row < model.size(); ++row) {
            auto a = model.vector(row);
            auto b = loaded.vector(row);
            for (std::size_t i = 0; i < a.size(); ++i)
                check(std::abs(a[i] - b[i]) <= 1e-6, "component drift in " + model.words()[row]);
        }
        ++cases;
    }

    // index: structure equality and byte-identical re-save
    std::mt19937_64 rng(8);
    for (int round = 0; round < 10; ++round) {
        const auto index = InvertedIndex::build(evrec::testing::random_corpus(rng, 120, 40, 2, 10));
        std::stringstream first;
        save_index(first, index);
        const auto loaded = load_index(first);
        check(loaded == index, "index changed in round trip");
        std::ostringstream second;
        save_index(second, loaded);
        check(second.str() == first.str(), "index file not byte-identical on re-save");
        ++cases;
    }

    expect_vectors_error_line("", 1, false);
    expect_vectors_error_line("2 x\n", 1, false);
    expect_vectors_error_line("2 3\na 1 2 3 4\nb 1 2 3\n", 2, true);
    expect_vectors_error_line("2 3\na 1 2 3\nb 1 2\n", 3, true);
    expect_vectors_error_line("2 3\na 1 2 3\nb 1 two 3\n", 3, false);
    expect_vectors_error_line("2 3\na 1 2 3\na 4 5 6\n", 3, false);
    expect_vectors_error_line("2 3\na 1 2 3\n", 3, false);
    cases += 7;

    std::ostringstream good;
    save_index(good, InvertedIndex::build(MonthlyCorpus{
                         MonthKey{2018, 2}, {doc_of("d1", {"a", "a", "b"}), doc_of("d2", {"b", "c"})}}));
    const std::string text = good.str();
    for (std::size_t cut = 0; cut < text.size(); ++cut) {
        std::istringstream in(text.substr(0, cut));
        bool rejected = false;
        try {
            load_index(in);
        } catch (const FormatError&) {
            rejected = true;
        }
        check(rejected, "truncated index of " + std::to_string(cut) + " bytes accepted");
        ++cases;
    }
    expect_index_error_line("INDEXv2 2018-02 0\n", 1);
    expect_index_error_line("INDEXv1 2018-02 1\nD d1 2018-03-01 0 a\nT a 1 d1:1\n", 2);
    expect_index_error_line("INDEXv1 2018-02 1\nD d1 2018-02-01 0 a\nT a 1 d1:2\n", 3);
    cases += 3;

    std::istringstream dirty("i1\t2018-02-03\tJewelry\tValentine Heart Necklace\n"
                             "i2\t2018-13-01\tX\tY\n"
                             "no tabs here\n"
                             "i4\t2018-02-14\tJewelry\tCupid Ring\n");
    const auto ingested = ingest(dirty);
    check(ingested.documents.size() == 2, "ingest kept " + std::to_string(ingested.documents.size()) + " docs");
    check(ingested.error_count() == 2 && ingested.errors[0].line == 2 && ingested.errors[1].line == 3,
          "ingest error lines");
    ++cases;

    return std::to_string(cases) + " round-trip and malformed-input cases";
}

} // namespace

int main()
{
    const auto trials = random_trials();
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
        {"oracle equivalence", [&] { return criterion_oracle(trials); }},
        {"expansion monotonicity", [&] { return criterion_monotonicity(trials); }},
        {"expansion constraints", criterion_expansion_constraints},
        {"score hand values", criterion_hand_values},
        {"embedding sanity", criterion_embedding_sanity},
        {"seasonal drift", criterion_seasonal_drift},
        {"recall arithmetic", criterion_recall_arithmetic},
        {"format round trips", criterion_round_trips},
    };

    int failed = 0;
    int number = 0;
    for (const auto& [name, run] : criteria) {
        ++number;
        std::string status = "PASS";
        std::string detail;
        try {
            detail = run();
        } catch (const Violation& v) {
            status = "FAIL";
            detail = v.detail;
        } catch (const std::exception& e) {
            status = "FAIL";
            detail = std::string("unexpected error: ") + e.what();
        }
        if (status == "FAIL")
            ++failed;
        std::cout << status << " [" << number << "] " << name << ": " << detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
