#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

// One exception type for the whole library; `kind` lets callers (and the CLI)
// react to specific failure modes without a taxonomy of classes.
enum class ErrorKind {
    UnsupportedRing,
    WindowRequired,
    SquareNotCommutative,
    BudgetExceeded,
    GeneratorMissing,
    PairNotHereditary,
    FactorNotInLeftClass,
    CoverInvalid,
    UniverseTooLarge,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    ErrorKind kind;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::WindowRequired: return "WindowRequired";
    case ErrorKind::SquareNotCommutative: return "SquareNotCommutative";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::GeneratorMissing: return "GeneratorMissing";
    case ErrorKind::PairNotHereditary: return "PairNotHereditary";
    case ErrorKind::FactorNotInLeftClass: return "FactorNotInLeftClass";
    case ErrorKind::CoverInvalid: return "CoverInvalid";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::Internal: return "Internal";
    }
    return "?";
}

} // namespace qcoh
