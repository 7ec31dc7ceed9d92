#include "evrec/index.hpp"

#include "evrec/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace evrec {

namespace {

std::string join(std::span<const std::string> tokens)
{
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty())
            out += ' ';
        out += t;
    }
    return out;
}

// The stored document keeps tokens only; raw text is replaced by the joined
// tokens so that persisted and in-memory indexes compare equal.
ItemDocument normalized(const ItemDocument& doc)
{
    std::span<const std::string> tokens(doc.tokens);
    return ItemDocument::make(doc.doc_id, doc.sold_date, join(tokens.first(doc.category_token_count)),
                              join(tokens.subspan(doc.category_token_count)));
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(line.substr(start));
            return parts;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename Int>
bool parse_uint(std::string_view text, Int& value)
{
    if (text.empty() || text.front() == '+' || text.front() == '-')
        return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // A final line without its LF counts as truncation.
    bool next(std::string& line)
    {
        if (!std::getline(in_, line))
            return false;
        ++line_no_;
        if (in_.eof())
            throw FormatError(line_no_, "truncated line (missing newline)");
        return true;
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

} // namespace

InvertedIndex InvertedIndex::build(const MonthlyCorpus& corpus)
{
    InvertedIndex index;
    index.month_ = corpus.month;
    for (const auto& doc : corpus.documents) {
        if (!index.documents_.emplace(doc.doc_id, normalized(doc)).second)
            throw InvalidArgument("duplicate doc_id in corpus: '" + doc.doc_id + "'");
        index.total_tokens_ += doc.tokens.size();
    }
    // documents_ iterates in doc_id order, so postings come out sorted.
    for (const auto& [id, doc] : index.documents_) {
        std::map<std::string_view, std::uint32_t> counts;
        for (const auto& token : doc.tokens)
            ++counts[token];
        for (const auto& [term, tf] : counts) {
            auto it = index.postings_.find(term);
            if (it == index.postings_.end())
                it = index.postings_.emplace(std::string(term), std::vector<Posting>{}).first;
            it->second.push_back(Posting{id, tf});
        }
    }
    return index;
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const
{
    auto it = postings_.find(term);
    if (it == postings_.end())
        return {};
    return it->second;
}

std::uint32_t InvertedIndex::tf(std::string_view doc_id, std::string_view term) const
{
    if (!has_document(doc_id))
        throw UnknownDocument(std::string(doc_id));
    auto list = postings(term);
    auto it = std::lower_bound(list.begin(), list.end(), doc_id,
                               [](const Posting& p, std::string_view id) { return p.doc_id < id; });
    return it != list.end() && it->doc_id == doc_id ? it->tf : 0;
}

double InvertedIndex::idf(std::string_view term) const
{
    const auto n = static_cast<double>(doc_count());
    const auto df = static_cast<double>(doc_freq(term));
    return std::log((n + 1.0) / (df + 1.0)) + 1.0;
}

std::set<std::string> InvertedIndex::candidate_docs(std::span<const std::string> terms) const
{
    std::set<std::string> docs;
    for (const auto& term : terms)
        for (const auto& p : postings(term))
            docs.insert(p.doc_id);
    return docs;
}

bool InvertedIndex::has_document(std::string_view doc_id) const
{
    return documents_.find(doc_id) != documents_.end();
}

const ItemDocument& InvertedIndex::document(std::string_view doc_id) const
{
    auto it = documents_.find(doc_id);
    if (it == documents_.end())
        throw UnknownDocument(std::string(doc_id));
    return it->second;
}

std::size_t InvertedIndex::doc_length(std::string_view doc_id) const
{
    return document(doc_id).tokens.size();
}

double InvertedIndex::avg_doc_length() const
{
    if (documents_.empty())
        return 0.0;
    return static_cast<double>(total_tokens_) / static_cast<double>(documents_.size());
}

void save_index(std::ostream& out, const InvertedIndex& index)
{
    out << "INDEXv1 " << index.month().to_string() << ' ' << index.doc_count() << '\n';
    for (const auto& [id, doc] : index.documents()) {
        out << "D " << id << ' ' << format_date(doc.sold_date) << ' ' << doc.category_token_count;
        for (const auto& t : doc.tokens)
            out << ' ' << t;
        out << '\n';
    }
    for (const auto& [term, list] : index.term_postings()) {
        out << "T " << term << ' ' << list.size() << ' ';
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i)
                out << ',';
            out << list[i].doc_id << ':' << list[i].tf;
        }
        out << '\n';
    }
}

InvertedIndex load_index(std::istream& in)
{
    LineReader reader(in);
    std::string line;
    if (!reader.next(line))
        throw FormatError(1, "missing INDEXv1 header");

    auto header = split(line, ' ');
    std::size_t n = 0;
    std::optional<MonthKey> month;
    if (header.size() != 3 || header[0] != "INDEXv1" || !(month = MonthKey::parse(header[1])) ||
        !parse_uint(header[2], n))
        throw FormatError(reader.line_no(), "malformed header '" + line + "'");

    MonthlyCorpus corpus{*month, {}};
    std::string previous_id;
    for (std::size_t i = 0; i < n; ++i) {
        if (!reader.next(line))
            throw FormatError(reader.line_no() + 1, "expected " + std::to_string(n) + " document lines, found " +
                                                       std::to_string(i));
        auto fields = split(line, ' ');
        std::size_t category_count = 0;
        if (fields.size() < 4 || fields[0] != "D" || fields[1].empty() ||
            !parse_uint(fields[3], category_count) || category_count > fields.size() - 4)
            throw FormatError(reader.line_no(), "malformed document line");
        auto date = parse_date(fields[2]);
        if (!date || MonthKey::of(*date) != *month)
            throw FormatError(reader.line_no(), "sold_date outside " + month->to_string());
        std::string id(fields[1]);
        if (!corpus.documents.empty() && !(previous_id < id))
            throw FormatError(reader.line_no(), "document lines must be in ascending doc_id order");

        std::vector<std::string> tokens(fields.begin() + 4, fields.end());
        std::span<const std::string> view(tokens);
        auto doc = ItemDocument::make(id, *date, join(view.first(category_count)),
                                      join(view.subspan(category_count)));
        if (doc.tokens != tokens || doc.category_token_count != category_count)
            throw FormatError(reader.line_no(), "document tokens are not normalized");
        corpus.documents.push_back(std::move(doc));
        previous_id = std::move(id);
    }

    InvertedIndex index = InvertedIndex::build(corpus);
    const auto& expected = index.term_postings();
    auto next_term = expected.begin();

    while (reader.next(line)) {
        auto fields = split(line, ' ');
        std::size_t df = 0;
        if (fields.size() != 4 || fields[0] != "T" || !parse_uint(fields[2], df))
            throw FormatError(reader.line_no(), "malformed term line");
        std::vector<Posting> list;
        for (auto entry : split(fields[3], ',')) {
            auto colon = entry.rfind(':');
            Posting p;
            if (colon == std::string_view::npos || !parse_uint(entry.substr(colon + 1), p.tf))
                throw FormatError(reader.line_no(), "malformed posting '" + std::string(entry) + "'");
            p.doc_id = std::string(entry.substr(0, colon));
            list.push_back(std::move(p));
        }
        if (list.size() != df)
            throw FormatError(reader.line_no(), "df " + std::to_string(df) + " disagrees with " +
                                                    std::to_string(list.size()) + " postings");
        if (next_term == expected.end() || next_term->first != fields[1] || next_term->second != list)
            throw FormatError(reader.line_no(), "term line for '" + std::string(fields[1]) +
                                                    "' disagrees with the document lines");
        ++next_term;
    }
    if (next_term != expected.end())
        throw FormatError(reader.line_no() + 1, "missing term line for '" + next_term->first + "'");
    return index;
}

} // namespace evrec
