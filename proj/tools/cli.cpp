#include "cli.hpp"

#include "CLI11.hpp"
#include "evrec/evrec.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace evrec::cli {

namespace {

struct Options {
    // shared
    std::string corpus_path;
    std::string model_path;
    std::string index_path;
    std::string out_path;
    std::string month;
    std::string stopwords_path;
    std::vector<std::string> seed;
    std::size_t k = 4;
    double min_sim = 0.6;
    double threshold = 0.0;
    std::string scorer = "tfidf";
    double k1 = 1.2;
    double b = 0.75;
    std::optional<std::size_t> limit;

    // ingest
    std::string input_path;
    std::string out_dir;

    // neighbors
    std::string word;

    TrainConfig train;
};

/// A user-facing flag problem that the parser itself cannot see.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path)
{
    out.close();
    if (!out)
        throw Error("failed writing '" + path + "'");
}

std::string fixed6(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

const CLI::Validator kMonth(
    [](std::string& value) -> std::string {
        return MonthKey::parse(value) ? std::string() : "expected YYYY-MM, got '" + value + "'";
    },
    "YYYY-MM");

const CLI::Validator kOpenUnit(
    [](std::string& value) -> std::string {
        try {
            double x = std::stod(value);
            return x > 0.0 && x < 1.0 ? std::string() : "must be strictly between 0 and 1";
        } catch (const std::exception&) {
            return "not a number: '" + value + "'";
        }
    },
    "(0,1)");

IngestResult ingest_file(const std::string& path, std::ostream& err)
{
    auto in = open_in(path);
    auto result = ingest(in);
    for (const auto& e : result.errors)
        err << path << ":" << e.line << ": skipped: " << e.message << '\n';
    return result;
}

MonthlyCorpus select_month(const Options& opt, std::ostream& err)
{
    auto partitions = segment_by_month(ingest_file(opt.corpus_path, err).documents);
    if (!opt.month.empty()) {
        auto month = *MonthKey::parse(opt.month);
        for (auto& p : partitions)
            if (p.month == month)
                return std::move(p);
        throw Error("corpus '" + opt.corpus_path + "' has no documents in " + opt.month);
    }
    if (partitions.size() == 1)
        return std::move(partitions.front());
    if (partitions.empty())
        throw Error("corpus '" + opt.corpus_path + "' has no documents");
    throw UsageError("corpus spans " + std::to_string(partitions.size()) + " months; pass --month");
}

EmbeddingModel load_model(const std::string& path)
{
    auto in = open_in(path);
    return load_vectors(in);
}

InvertedIndex load_index_file(const std::string& path)
{
    auto in = open_in(path);
    return load_index(in);
}

StopwordList load_stopwords(const Options& opt)
{
    if (opt.stopwords_path.empty())
        return StopwordList::builtin();
    auto in = open_in(opt.stopwords_path);
    return StopwordList::load(in);
}

Scorer make_scorer(const Options& opt)
{
    if (opt.scorer == "bm25")
        return Scorer(Bm25{opt.k1, opt.b});
    return Scorer::tfidf();
}

void warn_oov(const ExpandedQuery& query, std::ostream& err)
{
    for (const auto& term : query.oov_seed_terms())
        err << "warning: seed term '" << term << "' is not in the model vocabulary; no expansion from it\n";
}

int cmd_ingest(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto result = ingest_file(opt.input_path, err);
    const auto read = result.documents.size();
    std::filesystem::create_directories(opt.out_dir);
    for (const auto& partition : segment_by_month(std::move(result.documents))) {
        auto path = (std::filesystem::path(opt.out_dir) / (partition.month.to_string() + ".tsv")).string();
        auto file = open_out(path);
        write_corpus(file, partition.documents);
        finish(file, path);
        out << partition.month.to_string() << '\t' << partition.documents.size() << '\t' << path << '\n';
    }
    err << "ingested " << read << " documents, skipped " << result.error_count() << " lines\n";
    return kExitOk;
}

int cmd_train(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto corpus = select_month(opt, err);
    auto model = train(corpus, opt.train);
    auto file = open_out(opt.out_path);
    save_vectors(file, model);
    finish(file, opt.out_path);
    out << corpus.month.to_string() << '\t' << model.size() << " words\t" << model.dim() << " dims\t"
        << corpus.documents.size() << " docs\n";
    return kExitOk;
}

int cmd_neighbors(const Options& opt, std::ostream& out, std::ostream&)
{
    auto tokens = tokenize(opt.word);
    if (tokens.size() != 1)
        throw UsageError("--word must be a single word");
    auto model = load_model(opt.model_path);
    for (const auto& n : most_similar(model, tokens.front(), opt.k, opt.min_sim))
        out << n.term << '\t' << fixed6(n.score) << '\n';
    return kExitOk;
}

int cmd_expand(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto model = load_model(opt.model_path);
    auto query = expand_query(opt.seed, model, load_stopwords(opt), ExpansionConfig{opt.k, opt.min_sim});
    warn_oov(query, err);
    write_query_dump(out, query);
    return kExitOk;
}

int cmd_index(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto corpus = select_month(opt, err);
    auto index = InvertedIndex::build(corpus);
    auto file = open_out(opt.out_path);
    save_index(file, index);
    finish(file, opt.out_path);
    out << index.month().to_string() << '\t' << index.doc_count() << " docs\t" << index.term_postings().size()
        << " terms\n";
    return kExitOk;
}

ExpandedQuery build_query(const Options& opt, std::ostream& err)
{
    auto stopwords = load_stopwords(opt);
    ExpansionConfig config{opt.k, opt.min_sim};
    if (opt.model_path.empty())
        return ExpandedQuery::seed_only(opt.seed, stopwords, config);
    auto query = expand_query(opt.seed, load_model(opt.model_path), stopwords, config);
    warn_oov(query, err);
    return query;
}

int cmd_search(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto scorer = make_scorer(opt);
    auto index = load_index_file(opt.index_path);
    auto query = build_query(opt, err);
    write_results(out, retrieve(index, query, scorer, opt.threshold, opt.limit));
    return kExitOk;
}

int cmd_eval(const Options& opt, std::ostream& out, std::ostream&)
{
    auto scorer = make_scorer(opt);
    auto index = load_index_file(opt.index_path);
    auto model = load_model(opt.model_path);
    auto stopwords = load_stopwords(opt);
    auto report =
        recall_increase(index, opt.seed, model, stopwords, ExpansionConfig{opt.k, opt.min_sim}, opt.threshold, scorer);
    write_report(out, report);
    return kExitOk;
}

void add_month(CLI::App& cmd, Options& opt)
{
    cmd.add_option("--month", opt.month, "Month partition to use (YYYY-MM); required if the corpus spans several")
        ->check(kMonth);
}

void add_expansion(CLI::App& cmd, Options& opt)
{
    cmd.add_option("--seed", opt.seed, "Seed keywords; repeat or quote several words")->required();
    cmd.add_option("--k", opt.k, "Expansion candidates per seed term")->check(CLI::Range(1, 4))->capture_default_str();
    cmd.add_option("--min-sim", opt.min_sim, "Similarity a candidate must exceed")
        ->check(kOpenUnit)
        ->capture_default_str();
    cmd.add_option("--stopwords", opt.stopwords_path, "Stop word file (default: built-in English list)")
        ->check(CLI::ExistingFile);
}

void add_ranking(CLI::App& cmd, Options& opt)
{
    cmd.add_option("--threshold", opt.threshold, "Keep documents scoring above this")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--scorer", opt.scorer, "Per-term weight")
        ->check(CLI::IsMember({"tfidf", "bm25"}))
        ->capture_default_str();
    cmd.add_option("--k1", opt.k1, "BM25 k1")->check(CLI::PositiveNumber)->capture_default_str();
    cmd.add_option("--b", opt.b, "BM25 b")->check(CLI::Range(0.0, 1.0))->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Event-relevant item retrieval with embedding-based query expansion", "evrec"};
    app.require_subcommand(1);

    std::function<int(const Options&, std::ostream&, std::ostream&)> action;
    auto bind = [&](CLI::App* cmd, auto fn) { cmd->callback([&action, fn] { action = fn; }); };

    auto* ingest_cmd = app.add_subcommand("ingest", "Split a TSV corpus into per-month corpus files");
    ingest_cmd->add_option("--input", opt.input_path, "Corpus file")->required()->check(CLI::ExistingFile);
    ingest_cmd->add_option("--out-dir", opt.out_dir, "Directory for <YYYY-MM>.tsv files")->required();
    bind(ingest_cmd, cmd_ingest);

    auto* train_cmd = app.add_subcommand("train", "Train a skip-gram embedding model on one month");
    train_cmd->add_option("--corpus", opt.corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--out", opt.out_path, "Output vectors file (word2vec text)")->required();
    add_month(*train_cmd, opt);
    train_cmd->add_option("--dim", opt.train.dim, "Vector dimension")->check(CLI::PositiveNumber)->capture_default_str();
    train_cmd->add_option("--window", opt.train.window, "Context window each side")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--negatives", opt.train.negatives, "Negative samples per positive pair")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--epochs", opt.train.epochs, "Passes over the corpus")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--lr", opt.train.initial_lr, "Initial learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--min-lr", opt.train.final_lr, "Final learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--min-count", opt.train.min_count, "Minimum term frequency")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--seed", opt.train.rng_seed, "Random seed")->capture_default_str();
    bind(train_cmd, cmd_train);

    auto* neighbors_cmd = app.add_subcommand("neighbors", "List the nearest words to a word");
    neighbors_cmd->add_option("--model", opt.model_path, "Vectors file")->required()->check(CLI::ExistingFile);
    neighbors_cmd->add_option("--word", opt.word, "Query word")->required();
    neighbors_cmd->add_option("--k", opt.k, "Neighbors to list")->check(CLI::PositiveNumber)->capture_default_str();
    neighbors_cmd->add_option("--min-sim", opt.min_sim, "Similarity a neighbor must exceed")
        ->check(CLI::Range(-1.0, 1.0))
        ->capture_default_str();
    bind(neighbors_cmd, cmd_neighbors);

    auto* expand_cmd = app.add_subcommand("expand", "Expand seed keywords with similar words");
    expand_cmd->add_option("--model", opt.model_path, "Vectors file")->required()->check(CLI::ExistingFile);
    add_expansion(*expand_cmd, opt);
    bind(expand_cmd, cmd_expand);

    auto* index_cmd = app.add_subcommand("index", "Build an inverted index for one month");
    index_cmd->add_option("--corpus", opt.corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
    index_cmd->add_option("--out", opt.out_path, "Output index file")->required();
    add_month(*index_cmd, opt);
    bind(index_cmd, cmd_index);

    auto* search_cmd = app.add_subcommand("search", "Rank documents for seed keywords, expanded if --model is given");
    search_cmd->add_option("--index", opt.index_path, "Index file")->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--model", opt.model_path, "Vectors file used for expansion")->check(CLI::ExistingFile);
    add_expansion(*search_cmd, opt);
    add_ranking(*search_cmd, opt);
    search_cmd->add_option("--limit", opt.limit, "Maximum results");
    bind(search_cmd, cmd_search);

    auto* eval_cmd = app.add_subcommand("eval", "Measure the recall increase from expansion");
    eval_cmd->add_option("--index", opt.index_path, "Index file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--model", opt.model_path, "Vectors file")->required()->check(CLI::ExistingFile);
    add_expansion(*eval_cmd, opt);
    add_ranking(*eval_cmd, opt);
    bind(eval_cmd, cmd_eval);

    auto usage = [&](const std::string& message) {
        err << "error: " << message << "\n\n";
        const auto& subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto& subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return usage(e.what());
    }

    try {
        return action(opt, out, err);
    } catch (const UsageError& e) {
        return usage(e.what());
    } catch (const InvalidArgument& e) {
        return usage(e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

} // namespace evrec::cli
