#include "sptz2/error.hpp"

namespace sptz2 {

std::string_view to_string(ErrorCode code) noexcept {
    switch(code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::InvalidTuple: return "InvalidTuple";
        case ErrorCode::NotNormalizable: return "NotNormalizable";
        case ErrorCode::NotPrimitive: return "NotPrimitive";
        case ErrorCode::PrimitivityDisagreement: return "PrimitivityDisagreement";
        case ErrorCode::NotFaithful: return "NotFaithful";
        case ErrorCode::WindowTooLarge: return "WindowTooLarge";
        case ErrorCode::NormalizationBroken: return "NormalizationBroken";
        case ErrorCode::NotSameState: return "NotSameState";
        case ErrorCode::NotUnitaryMultiple: return "NotUnitaryMultiple";
        case ErrorCode::GaugeRelationFailed: return "GaugeRelationFailed";
        case ErrorCode::Inconclusive: return "Inconclusive";
        case ErrorCode::NotReflectionInvariant: return "NotReflectionInvariant";
        case ErrorCode::AmbiguousSymmetry: return "AmbiguousSymmetry";
        case ErrorCode::IndexInvariantViolated: return "IndexInvariantViolated";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::NotUnitVector: return "NotUnitVector";
        case ErrorCode::DegenerateSupport: return "DegenerateSupport";
        case ErrorCode::InvalidChain: return "InvalidChain";
        case ErrorCode::DimensionCap: return "DimensionCap";
        case ErrorCode::UnknownModel: return "UnknownModel";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

} // namespace sptz2
