#pragma once

#include <stdexcept>
#include <string>

namespace nchh {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed construction argument (empty interval, n = 0, bad grid size).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Syntax or catalog error in a function / error-function specification.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at offset " + std::to_string(position) + ": " + message),
          position_(position), detail_(message) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

/// The subdivision count does not satisfy the rule's parity/multiplicity constraint.
class ParityError : public Error {
public:
    using Error::Error;
};

/// A function or error function could not be evaluated at `where()`.
class EvaluationError : public Error {
public:
    EvaluationError(double where, const std::string& message)
        : Error(message), where_(where) {}

    double where() const noexcept { return where_; }

private:
    double where_;
};

/// Successive refinement did not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(double previous, double last, const std::string& message)
        : Error(message), previous_(previous), last_(last) {}

    double previous() const noexcept { return previous_; }
    double last() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

/// The requested (class, rule) combination has no bound formula.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace nchh
