#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgp {

/// Raised when a caller breaks an operation's precondition (stepping a
/// finished world, an out-of-range control encoding, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed text input. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a semantic rule (rates out of range,
/// unsolvable level, missing traces, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A play trace whose stored events/score do not match its replay.
class TraceCorrupt : public std::runtime_error {
public:
    TraceCorrupt(const std::string& message, long long firstDivergentFrame);

    long long frame() const noexcept { return frame_; }

private:
    long long frame_;
};

} // namespace pgp
