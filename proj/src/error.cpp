#include "ecx/error.hpp"

namespace ecx {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::AllPruned: return "AllPruned";
    case ErrorCode::NotPruned: return "NotPruned";
    case ErrorCode::ZeroFitness: return "ZeroFitness";
    case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotReproducible: return "NotReproducible";
    }
    return "Unknown";
}

} // namespace ecx
