#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sharpfront {

enum class ErrorCode {
    Domain,             // argument outside the admissible range
    UnsupportedKind,    // operation not defined for this nonlinearity class
    Validation,         // declared structure does not match sampled data
    NumericalFault,     // NaN / failed solve inside a time step
    DegenerateBalance,  // f(theta2) <= 0, bump cannot be built
    Resolution,         // not enough tabulated points
    InsufficientData,   // trajectory too short to classify
    Bracket,            // bisection bracket does not straddle the transition
    Convergence,        // iteration cap reached
    Precondition,       // hypotheses of a check are not met
    Config,             // malformed or inconsistent run configuration
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sharpfront
