#pragma once

#include <stdexcept>
#include <string>

namespace phasetrop {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
    Parse,          ///< malformed series / polynomial / flag text
    Domain,         ///< precondition violated (singular input, zero series, ...)
    Inconclusive,   ///< zero-ness undecidable at the current truncation
    Hypothesis,     ///< a theorem hypothesis fails (e.g. component inside Q)
    Convergence,    ///< an iterative routine did not converge
    Invariant,      ///< a mathematical invariant was violated at runtime
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorKind::Parse, what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace phasetrop
