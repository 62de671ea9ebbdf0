#pragma once

#include <stdexcept>
#include <string>

namespace memaccel {

enum class ErrorKind {
    InvalidArgument,
    DegreeZero,
    NoConvergence,
    EmptySet,
    ParseError,
    DuplicateEdge,
    NegativeWeight,
    UnknownEdge,
    AllZero,
    AlphaZero,
    OutOfInterval,
    BetaTildeMinusOne,
    PreconditionViolation,
    IncompatibleBias,
    DropOnNonLaplacian,
    NoDecay,
};

[[nodiscard]] constexpr const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DegreeZero: return "DegreeZero";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::EmptySet: return "EmptySet";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DuplicateEdge: return "DuplicateEdge";
        case ErrorKind::NegativeWeight: return "NegativeWeight";
        case ErrorKind::UnknownEdge: return "UnknownEdge";
        case ErrorKind::AllZero: return "AllZero";
        case ErrorKind::AlphaZero: return "AlphaZero";
        case ErrorKind::OutOfInterval: return "OutOfInterval";
        case ErrorKind::BetaTildeMinusOne: return "BetaTildeMinusOne";
        case ErrorKind::PreconditionViolation: return "PreconditionViolation";
        case ErrorKind::IncompatibleBias: return "IncompatibleBias";
        case ErrorKind::DropOnNonLaplacian: return "DropOnNonLaplacian";
        case ErrorKind::NoDecay: return "NoDecay";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace memaccel
