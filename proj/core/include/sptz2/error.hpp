#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sptz2 {

enum class ErrorCode {
    // linalg
    NotSquare,
    NotHermitian,
    ConvergenceFailure,
    NegativeEigenvalue,
    RankDeficient,
    // mps
    InvalidTuple,
    NotNormalizable,
    NotPrimitive,
    PrimitivityDisagreement,
    NotFaithful,
    WindowTooLarge,
    // reflection
    NormalizationBroken,
    NotSameState,
    NotUnitaryMultiple,
    GaugeRelationFailed,
    Inconclusive,
    NotReflectionInvariant,
    AmbiguousSymmetry,
    IndexInvariantViolated,
    // modular
    ZeroVector,
    NotUnitVector,
    DegenerateSupport,
    // hamiltonian
    InvalidChain,
    DimensionCap,
    // zoo / scan
    UnknownModel,
    InvalidSpec,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &what);

} // namespace sptz2
