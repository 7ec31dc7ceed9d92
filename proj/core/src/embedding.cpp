#include "evrec/embedding.hpp"

#include "evrec/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

namespace evrec {

namespace {

bool has_whitespace(std::string_view s)
{
    return std::any_of(s.begin(), s.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    });
}

// Uniform [0, 1) from the raw engine output; std distributions are not
// specified bit-for-bit across standard libraries.
double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sigmoid(double x)
{
    return 1.0 / (1.0 + std::exp(-x));
}

std::vector<std::string_view> split_spaces(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t')
            ++i;
        if (i > start)
            fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

template <typename Number>
bool parse_number(std::string_view text, Number& value)
{
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

} // namespace

void TrainConfig::validate() const
{
    if (dim == 0 || window == 0 || negatives == 0 || epochs == 0 || min_count == 0)
        throw InvalidArgument("train config: dim, window, negatives, epochs and min_count must be positive");
    if (!(final_lr > 0.0) || !(final_lr <= initial_lr))
        throw InvalidArgument("train config: need 0 < final_lr <= initial_lr");
}

EmbeddingModel::EmbeddingModel(std::size_t dim, std::optional<MonthKey> month, std::size_t trained_on_docs)
    : dim_(dim), month_(month), trained_on_docs_(trained_on_docs)
{
    if (dim == 0)
        throw InvalidArgument("embedding dimension must be positive");
}

void EmbeddingModel::add(std::string word, std::span<const double> vector)
{
    if (vector.size() != dim_)
        throw DimensionMismatch("vector for '" + word + "' has " + std::to_string(vector.size()) +
                                " components, model dimension is " + std::to_string(dim_));
    if (word.empty() || has_whitespace(word))
        throw InvalidArgument("embedding word must be non-empty and whitespace free");
    if (!rows_.emplace(word, words_.size()).second)
        throw InvalidArgument("duplicate embedding word '" + word + "'");
    words_.push_back(std::move(word));
    data_.insert(data_.end(), vector.begin(), vector.end());
}

bool EmbeddingModel::contains(std::string_view word) const
{
    return rows_.find(std::string(word)) != rows_.end();
}

std::span<const double> EmbeddingModel::vector(std::string_view word) const
{
    auto it = rows_.find(std::string(word));
    if (it == rows_.end())
        throw OutOfVocabulary(std::string(word));
    return vector(it->second);
}

std::span<const double> EmbeddingModel::vector(std::size_t row) const
{
    return std::span<const double>(data_).subspan(row * dim_, dim_);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("cosine of vectors with lengths " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    double dot = 0.0;
    double norm_a = 0.0;
    double norm_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        norm_a += a[i] * a[i];
        norm_b += b[i] * b[i];
    }
    if (norm_a == 0.0 || norm_b == 0.0)
        throw ZeroVector("cosine similarity of a zero vector");
    double cos = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    return std::clamp(cos, -1.0, 1.0);
}

double similarity(const EmbeddingModel& model, std::string_view i, std::string_view j)
{
    auto a = model.vector(i);
    auto b = model.vector(j);
    double score = cosine_similarity(a, b);
    return i == j ? 1.0 : score;
}

std::vector<Neighbor> most_similar(const EmbeddingModel& model, std::string_view term, std::size_t k,
                                   double min_sim)
{
    if (k == 0)
        throw InvalidArgument("most_similar: k must be at least 1");
    auto query = model.vector(term);

    std::vector<Neighbor> hits;
    const auto& words = model.words();
    for (std::size_t row = 0; row < words.size(); ++row) {
        if (words[row] == term)
            continue;
        auto candidate = model.vector(row);
        if (std::all_of(candidate.begin(), candidate.end(), [](double x) { return x == 0.0; }))
            continue;
        double score = cosine_similarity(query, candidate);
        if (score > min_sim)
            hits.push_back({words[row], score});
    }
    auto better = [](const Neighbor& a, const Neighbor& b) {
        return a.score != b.score ? a.score > b.score : a.term < b.term;
    };
    if (hits.size() > k) {
        std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(), better);
        hits.resize(k);
    } else {
        std::sort(hits.begin(), hits.end(), better);
    }
    return hits;
}

std::vector<double> negative_sampling_distribution(std::span<const std::uint64_t> counts)
{
    std::vector<double> weights(counts.size());
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        weights[i] = std::pow(static_cast<double>(counts[i]), 0.75);
        total += weights[i];
    }
    if (total > 0.0)
        for (auto& w : weights)
            w /= total;
    return weights;
}

EmbeddingModel train(const MonthlyCorpus& corpus, const TrainConfig& cfg)
{
    cfg.validate();
    const Vocabulary vocab = Vocabulary::build(corpus.documents, cfg.min_count);
    if (vocab.empty())
        throw EmptyVocabulary("no term occurs at least " + std::to_string(cfg.min_count) + " times in " +
                              corpus.month.to_string());

    // Terms below min_count are dropped before windowing.
    std::vector<std::vector<std::uint32_t>> sentences;
    sentences.reserve(corpus.documents.size());
    std::uint64_t pairs_per_epoch = 0;
    for (const auto& doc : corpus.documents) {
        std::vector<std::uint32_t> ids;
        for (const auto& token : doc.tokens)
            if (auto entry = vocab.find(token))
                ids.push_back(entry->id);
        const std::size_t n = ids.size();
        for (std::size_t pos = 0; pos < n; ++pos)
            pairs_per_epoch += std::min(cfg.window, pos) + std::min(cfg.window, n - 1 - pos);
        if (n > 1)
            sentences.push_back(std::move(ids));
    }
    if (pairs_per_epoch == 0)
        throw NoTrainingPairs("no (center, context) pairs in " + corpus.month.to_string());

    const std::size_t dim = cfg.dim;
    const std::size_t vocab_size = vocab.size();

    auto noise = negative_sampling_distribution(vocab.counts());
    std::vector<double> cumulative(noise.size());
    std::partial_sum(noise.begin(), noise.end(), cumulative.begin());

    std::mt19937_64 rng(cfg.rng_seed);
    std::vector<double> input(vocab_size * dim);
    std::vector<double> output(vocab_size * dim, 0.0);
    for (auto& x : input)
        x = (uniform01(rng) - 0.5) / static_cast<double>(dim);

    auto sample_noise = [&]() -> std::uint32_t {
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), uniform01(rng));
        auto id = static_cast<std::size_t>(it - cumulative.begin());
        return static_cast<std::uint32_t>(std::min(id, vocab_size - 1));
    };

    const std::uint64_t total_steps = pairs_per_epoch * cfg.epochs;
    const double lr_span = cfg.initial_lr - cfg.final_lr;
    std::uint64_t step = 0;
    std::vector<double> gradient(dim);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& sentence : sentences) {
            const std::size_t n = sentence.size();
            for (std::size_t pos = 0; pos < n; ++pos) {
                const std::size_t lo = pos >= cfg.window ? pos - cfg.window : 0;
                const std::size_t hi = std::min(n - 1, pos + cfg.window);
                double* center = &input[sentence[pos] * dim];
                for (std::size_t ctx = lo; ctx <= hi; ++ctx) {
                    if (ctx == pos)
                        continue;
                    const double progress =
                        total_steps > 1 ? static_cast<double>(step) / static_cast<double>(total_steps - 1) : 1.0;
                    const double lr = cfg.initial_lr - lr_span * progress;
                    const std::uint32_t context = sentence[ctx];

                    std::fill(gradient.begin(), gradient.end(), 0.0);
                    for (std::size_t d = 0; d <= cfg.negatives; ++d) {
                        std::uint32_t target;
                        double label;
                        if (d == 0) {
                            target = context;
                            label = 1.0;
                        } else {
                            target = sample_noise();
                            if (target == context)
                                continue;
                            label = 0.0;
                        }
                        double* out = &output[target * dim];
                        double dot = 0.0;
                        for (std::size_t c = 0; c < dim; ++c)
                            dot += center[c] * out[c];
                        const double g = (label - sigmoid(dot)) * lr;
                        for (std::size_t c = 0; c < dim; ++c)
                            gradient[c] += g * out[c];
                        for (std::size_t c = 0; c < dim; ++c)
                            out[c] += g * center[c];
                    }
                    for (std::size_t c = 0; c < dim; ++c)
                        center[c] += gradient[c];
                    ++step;
                }
            }
        }
    }

    EmbeddingModel model(dim, corpus.month, corpus.documents.size());
    for (std::uint32_t id = 0; id < vocab_size; ++id) {
        std::span<const double> row(&input[id * dim], dim);
        if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; }))
            throw Error("training produced an all-zero vector for '" + vocab.term(id) + "'");
        model.add(vocab.term(id), row);
    }
    return model;
}

void save_vectors(std::ostream& out, const EmbeddingModel& model)
{
    out << model.size() << ' ' << model.dim() << '\n';
    char buf[64];
    for (std::size_t row = 0; row < model.size(); ++row) {
        out << model.words()[row];
        for (double x : model.vector(row)) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
            out << ' ';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
}

EmbeddingModel load_vectors(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw FormatError(1, "missing \"<count> <dim>\" header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    auto header = split_spaces(line);
    std::size_t count = 0;
    std::size_t dim = 0;
    if (header.size() != 2 || !parse_number(header[0], count) || !parse_number(header[1], dim) || dim == 0)
        throw FormatError(1, "malformed header '" + line + "'");

    EmbeddingModel model(dim);
    std::vector<double> values(dim);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto fields = split_spaces(line);
        if (fields.empty()) {
            if (model.size() == count)
                continue;
            throw FormatError(line_no, "empty row");
        }
        if (model.size() == count)
            throw FormatError(line_no, "more rows than the header's " + std::to_string(count));
        if (fields.size() - 1 != dim)
            throw DimensionMismatch(line_no, "row has " + std::to_string(fields.size() - 1) +
                                                 " components, header says " + std::to_string(dim));
        for (std::size_t c = 0; c < dim; ++c)
            if (!parse_number(fields[c + 1], values[c]) || !std::isfinite(values[c]))
                throw FormatError(line_no, "bad component '" + std::string(fields[c + 1]) + "'");
        std::string word(fields[0]);
        if (model.contains(word))
            throw FormatError(line_no, "duplicate word '" + word + "'");
        model.add(std::move(word), values);
    }
    if (model.size() != count)
        throw FormatError(line_no + 1, "expected " + std::to_string(count) + " rows, found " +
                                           std::to_string(model.size()));
    return model;
}

} // namespace evrec
