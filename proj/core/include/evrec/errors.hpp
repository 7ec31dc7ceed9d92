#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evrec {

/// Base class of every error raised by the library. The CLI maps these to
/// exit code 2 (data/format error).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed persisted data. Carries the 1-based line number of the offence
/// (0 when the problem is not tied to a line, e.g. a missing trailer).
class FormatError : public Error {
public:
    FormatError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateDocument : public Error {
public:
    DuplicateDocument(std::size_t line, const std::string& doc_id)
        : Error("line " + std::to_string(line) + ": duplicate doc_id '" + doc_id + "'"),
          line_(line), doc_id_(doc_id)
    {}

    std::size_t line() const noexcept { return line_; }
    const std::string& doc_id() const noexcept { return doc_id_; }

private:
    std::size_t line_;
    std::string doc_id_;
};

/// Vector lengths disagree. Carries a 1-based line number when raised while
/// reading a vectors file, 0 otherwise.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
    DimensionMismatch(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

class OutOfVocabulary : public Error {
public:
    explicit OutOfVocabulary(const std::string& term)
        : Error("term not in vocabulary: '" + term + "'"), term_(term)
    {}

    const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

class EmptyVocabulary : public Error {
public:
    using Error::Error;
};

class NoTrainingPairs : public Error {
public:
    using Error::Error;
};

class UnknownDocument : public Error {
public:
    explicit UnknownDocument(const std::string& doc_id)
        : Error("unknown document: '" + doc_id + "'")
    {}
};

class NotInQuery : public Error {
public:
    explicit NotInQuery(const std::string& term)
        : Error("term is neither a seed nor an expansion term: '" + term + "'")
    {}
};

class EmptySeed : public Error {
public:
    using Error::Error;
};

class AllStopwords : public Error {
public:
    using Error::Error;
};

class UndefinedBaseline : public Error {
public:
    using Error::Error;
};

} // namespace evrec
