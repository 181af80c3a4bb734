#pragma once

#include <stdexcept>
#include <string>

namespace citefield {

// Base class for data-level failures. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& file, long line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : Error(what), line_(0) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Unknown journal abbreviation or out-of-range id.
class LookupError : public Error {
public:
    using Error::Error;
};

// A required year is absent from the citable records.
class MissingDataError : public Error {
public:
    using Error::Error;
};

// Indicator has no defined value (zero denominator).
class UndefinedIndicatorError : public Error {
public:
    using Error::Error;
};

// Seed journal has no citations in the requested direction.
class EmptyEnvironmentError : public Error {
public:
    using Error::Error;
};

// Similarity of a zero vector (or zero-variance vector for Pearson).
class UndefinedSimilarityError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace citefield
