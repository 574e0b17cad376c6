#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wisecrowd {

enum class ErrorKind {
    ShapeMismatch,
    SampleTooSmall,
    ZeroJudges,
    InvalidDistribution,
    ValidationFailed,
    UndefinedSkill,
    ZeroCriterionVariance,
    JointNotPSD,
    MissingCriterionColumn,
    NonNumericCell,
    DuplicateJudgeLabel,
    ParseError,
    Io,
    NoConvergence,
    InfeasibleCorrelationRange,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is
/// what callers dispatch on; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// True for the error kinds that report a numerical failure rather than bad input.
inline bool is_numerical(ErrorKind kind) {
    return kind == ErrorKind::NoConvergence || kind == ErrorKind::InfeasibleCorrelationRange;
}

}  // namespace wisecrowd
