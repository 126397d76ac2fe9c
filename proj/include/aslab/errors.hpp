#pragma once

#include <stdexcept>
#include <string>

namespace aslab {

// Base class for all checked failures in the library.  The CLI maps these to
// exit codes: parameter problems -> 2, resource exhaustion -> 3, everything
// else -> 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct FieldMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct ConductorTooSmall : Error { using Error::Error; };
struct NotASubfield : Error { using Error::Error; };
struct FieldTooSmall : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct AmbientTooSmall : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct CheckFailed : Error { using Error::Error; };
struct NotAHomomorphism : Error { using Error::Error; };
struct NotASubgroup : Error { using Error::Error; };
struct NoCandidate : Error { using Error::Error; };
struct MultipleCandidates : Error { using Error::Error; };
struct NewtonDegenerate : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };
struct HenselFailure : Error { using Error::Error; };
struct Inseparable : Error { using Error::Error; };
struct UnsupportedStep : Error { using Error::Error; };
struct MissingPinnedValue : Error { using Error::Error; };
struct NotEpipelagicData : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };

}  // namespace aslab
