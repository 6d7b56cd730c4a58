#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ncrot {

/// Failure categories shared by every module. The CLI maps these onto
/// exit codes, so new kinds must be added to `cli::exit_code_for` too.
enum class ErrorKind {
    NotSL2,
    NotUnimodular,
    FiniteOrderMatrix,
    RationalValue,
    ZeroDenominator,
    UnsupportedOrder,
    DivergentAtom,
    NonUnitArgument,
    InvalidTheta,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Malformed textual/JSON input; `offset` is the 0-based character position
/// where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(ErrorKind::ParseError, message + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace ncrot
