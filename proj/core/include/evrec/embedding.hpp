#pragma once

#include "evrec/corpus.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace evrec {

/// Skip-gram with negative sampling hyperparameters. Defaults target
/// desk-scale corpora of short titles.
struct TrainConfig {
    std::size_t dim = 50;
    std::size_t window = 4;
    std::size_t negatives = 5;
    std::size_t epochs = 5;
    double initial_lr = 0.025;
    double final_lr = 1e-4;
    std::uint64_t min_count = 2;
    std::uint64_t rng_seed = 42;

    /// Throws InvalidArgument unless all counts are positive and
    /// 0 < final_lr <= initial_lr.
    void validate() const;
};

/// Word -> dense vector map for one month partition. Vectors are stored as
/// given (not normalized); rows keep insertion order.
class EmbeddingModel {
public:
    explicit EmbeddingModel(std::size_t dim, std::optional<MonthKey> month = std::nullopt,
                            std::size_t trained_on_docs = 0);

    /// Throws DimensionMismatch on wrong length, InvalidArgument on a
    /// repeated or whitespace-bearing word.
    void add(std::string word, std::span<const double> vector);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return words_.size(); }
    const std::optional<MonthKey>& month() const { return month_; }
    void set_month(std::optional<MonthKey> month) { month_ = month; }
    std::size_t trained_on_docs() const { return trained_on_docs_; }

    bool contains(std::string_view word) const;
    const std::vector<std::string>& words() const { return words_; }

    /// Throws OutOfVocabulary.
    std::span<const double> vector(std::string_view word) const;
    std::span<const double> vector(std::size_t row) const;

private:
    std::size_t dim_;
    std::optional<MonthKey> month_;
    std::size_t trained_on_docs_;
    std::vector<std::string> words_;
    std::vector<double> data_;
    std::unordered_map<std::string, std::size_t> rows_;
};

/// Cosine of the angle between a and b, clamped to [-1, 1].
/// Throws DimensionMismatch or ZeroVector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// sim(i, j) over a model. Identical terms score exactly 1.
/// Throws OutOfVocabulary if either term is absent.
double similarity(const EmbeddingModel& model, std::string_view i, std::string_view j);

struct Neighbor {
    std::string term;
    double score;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Up to k vocabulary terms whose similarity to `term` is strictly above
/// min_sim, best first, ties by term ascending. Never returns `term`.
/// Words with an all-zero vector are never returned.
std::vector<Neighbor> most_similar(const EmbeddingModel& model, std::string_view term, std::size_t k,
                                   double min_sim);

/// Unigram^0.75 noise distribution over vocabulary ids.
std::vector<double> negative_sampling_distribution(std::span<const std::uint64_t> counts);

/// Trains skip-gram with negative sampling on one partition. Single
/// threaded and bit-deterministic for a fixed corpus order and seed.
/// Throws EmptyVocabulary or NoTrainingPairs.
EmbeddingModel train(const MonthlyCorpus& corpus, const TrainConfig& cfg = {});

/// word2vec text format: "<count> <dim>" header then one row per word.
void save_vectors(std::ostream& out, const EmbeddingModel& model);

/// Throws FormatError (with line) or DimensionMismatch.
EmbeddingModel load_vectors(std::istream& in);

} // namespace evrec
