#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdnet {

/// Syntax error in network or expression source. Positions are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::string token)
        : std::runtime_error(format(line, column, message, token)),
          line_(line), column_(column), message_(std::move(message)), token_(std::move(token)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& token() const noexcept { return token_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& msg,
                              const std::string& tok) {
        std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
        if (!tok.empty()) s += " (near '" + tok + "')";
        return s;
    }

    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string token_;
};

/// Well-formed input that violates a semantic invariant (unknown species, negative rate, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnboundVariable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LinearSolveFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFiniteState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExponentRelationViolated : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IOError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rdnet
