#include "evrec/evrec.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

using namespace evrec;

namespace {

MonthlyCorpus synthetic_corpus(std::size_t docs, std::size_t vocab, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<double> weights(vocab);
    for (std::size_t i = 0; i < vocab; ++i)
        weights[i] = 1.0 / static_cast<double>(i + 1);
    std::discrete_distribution<std::size_t> term(weights.begin(), weights.end());
    std::uniform_int_distribution<int> length(3, 12);

    MonthlyCorpus corpus{MonthKey{2018, 2}, {}};
    const auto day = std::chrono::year{2018} / std::chrono::February / 14;
    for (std::size_t d = 0; d < docs; ++d) {
        std::string title;
        for (int i = length(rng); i > 0; --i)
            title += "w" + std::to_string(term(rng)) + " ";
        corpus.documents.push_back(ItemDocument::make("d" + std::to_string(d), day, "Jewelry", title));
    }
    return corpus;
}

EmbeddingModel random_model(std::size_t words, std::size_t dim)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    EmbeddingModel model(dim);
    std::vector<double> v(dim);
    for (std::size_t w = 0; w < words; ++w) {
        for (auto& x : v)
            x = normal(rng);
        model.add("w" + std::to_string(w), v);
    }
    return model;
}

void BM_Tokenize(benchmark::State& state)
{
    const std::string title = "Sterling Silver Valentine's Heart Necklace, Gift Box & Card (2018 Édition)";
    for (auto _ : state)
        benchmark::DoNotOptimize(tokenize("Jewelry & Watches", title));
}
BENCHMARK(BM_Tokenize);

void BM_BuildIndex(benchmark::State& state)
{
    const auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)), 2000, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(InvertedIndex::build(corpus));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(1000)->Arg(10000);

void BM_Retrieve(benchmark::State& state)
{
    const auto index = InvertedIndex::build(synthetic_corpus(static_cast<std::size_t>(state.range(0)), 2000, 2));
    const std::vector<std::string> seed{"w3 w17 w40"};
    const auto query = with_expansions(ExpandedQuery::seed_only(seed, StopwordList{}),
                                       {{"w5", 0.9}, {"w8", 0.8}, {"w120", 0.7}, {"w300", 0.65}});
    const auto scorer = state.range(1) ? Scorer::bm25() : Scorer::tfidf();
    for (auto _ : state)
        benchmark::DoNotOptimize(retrieve(index, query, scorer, 1.0));
}
BENCHMARK(BM_Retrieve)->Args({1000, 0})->Args({10000, 0})->Args({10000, 1});

void BM_MostSimilar(benchmark::State& state)
{
    const auto model = random_model(static_cast<std::size_t>(state.range(0)), 50);
    for (auto _ : state)
        benchmark::DoNotOptimize(most_similar(model, "w0", 4, 0.6));
}
BENCHMARK(BM_MostSimilar)->Arg(1000)->Arg(20000);

void BM_Train(benchmark::State& state)
{
    const auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)), 500, 3);
    TrainConfig cfg;
    cfg.epochs = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(train(corpus, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Train)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
