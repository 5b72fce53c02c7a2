#include "sharpfront/error.hpp"

namespace sharpfront {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Domain: return "domain";
        case ErrorCode::UnsupportedKind: return "unsupported-kind";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::NumericalFault: return "numerical-fault";
        case ErrorCode::DegenerateBalance: return "degenerate-balance";
        case ErrorCode::Resolution: return "resolution";
        case ErrorCode::InsufficientData: return "insufficient-data";
        case ErrorCode::Bracket: return "bracket";
        case ErrorCode::Convergence: return "convergence";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::Config: return "config";
    }
    return "unknown";
}

}  // namespace sharpfront
