#include "mixedcore/errors.hpp"

namespace mixedcore {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::MalformedRational: return "MalformedRational";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonPositiveMass: return "NonPositiveMass";
        case ErrorCode::WeightsNotNormalized: return "WeightsNotNormalized";
        case ErrorCode::DuplicateCohortId: return "DuplicateCohortId";
        case ErrorCode::ZeroAggregateCommodity: return "ZeroAggregateCommodity";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NegativeQuantity: return "NegativeQuantity";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidPrice: return "InvalidPrice";
        case ErrorCode::ZeroPrice: return "ZeroPrice";
        case ErrorCode::NotParetoOptimal: return "NotParetoOptimal";
        case ErrorCode::UnsupportedShape: return "UnsupportedShape";
        case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
        case ErrorCode::UnknownCohortId: return "UnknownCohortId";
        case ErrorCode::NotFeasible: return "NotFeasible";
        case ErrorCode::HypothesisViolation: return "HypothesisViolation";
        case ErrorCode::CertificationFailure: return "CertificationFailure";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mixedcore
