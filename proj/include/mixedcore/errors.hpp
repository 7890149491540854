#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixedcore {

enum class ErrorCode {
    MalformedDocument,
    MalformedRational,
    LengthMismatch,
    NonPositiveMass,
    WeightsNotNormalized,
    DuplicateCohortId,
    ZeroAggregateCommodity,
    ShapeMismatch,
    NegativeQuantity,
    DimensionMismatch,
    InvalidPrice,
    ZeroPrice,
    NotParetoOptimal,
    UnsupportedShape,
    NonPositiveLambda,
    UnknownCohortId,
    NotFeasible,
    HypothesisViolation,
    CertificationFailure,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// the code that names the violated contract.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mixedcore
