#pragma once

#include <optional>
#include <string>

#include "sptz2/common.hpp"
#include "sptz2/config.hpp"
#include "sptz2/mps.hpp"

/// Reflection symmetry of matrix product states and its ℤ₂ index.
///
/// Given a primitive normalized tuple v with invariant state ρ, the reflected
/// tuple is ṽ_μ = ρ^{-1/2} (c v_μ c)* ρ^{1/2}, where c is complex conjugation
/// in the eigenbasis of ρ. The state is reflection invariant exactly when v and
/// ṽ generate the same state, i.e. U v_μ = e^{it} ṽ_μ U for a unitary U. In the
/// ρ-eigenbasis Uᵀ = ζ U with ζ = ±1, which is the index.
namespace sptz2::reflection {

struct ReflectedTuple {
    mps::MpsTuple tilde;            ///< ṽ in the original basis
    mps::MpsTuple tilde_eigenbasis; ///< ṽ in the ρ-eigenbasis
    mps::MpsTuple v_eigenbasis;     ///< v in the ρ-eigenbasis
    ComplexMatrix basis;            ///< eigenvectors of ρ as columns, eigenvalues descending
    RealVector rho_diag;            ///< eigenvalues of ρ, descending
};

struct GaugeSolution {
    ComplexMatrix unitary;
    Complex phase;                     ///< e^{it}
    double relation_residual;          ///< max_μ ‖U v_μ − e^{it} w_μ U‖_F
    double unitary_multiple_deviation; ///< how far the mixed eigenmatrix is from c·U
    double mixed_radius;               ///< |λ| of the dominant mixed-transfer eigenvalue
};

struct ReflectionEvidence {
    bool invariant;
    bool via_gauge;
    double gauge_residual; ///< relation residual on success, 1 − |λ| or deviation on failure
    std::string gauge_failure;
    bool via_marginals;
    double marginal_residual; ///< max_l ‖reverse(ω_l) − ω_l‖_F
    Index window;             ///< largest l compared
    std::optional<GaugeSolution> gauge;
};

struct IndexReport {
    Sign zeta;
    mps::MpsTuple tuple; ///< the normalized generator actually analysed
    mps::InvariantState state;
    mps::PrimitivityCertificate primitivity;
    ReflectedTuple reflected;
    ReflectionEvidence reflection;
    GaugeSolution gauge;            ///< U and e^{it} in the original basis
    ComplexMatrix unitary_eigenbasis;
    double sym_residual;            ///< ‖Uᵀ − U‖_F in the ρ-eigenbasis
    double antisym_residual;        ///< ‖Uᵀ + U‖_F in the ρ-eigenbasis
    double phase_sq_residual;       ///< |e^{2it} − 1|
    double rho_commute_residual;    ///< ‖U ρ U† − ρ‖_F
    double theta_sq_residual;       ///< ‖U†Uᵀ − ζ 1‖_F, i.e. θ² = ζ for θ = U† c
};

ReflectedTuple reflected_tuple(const mps::MpsTuple &v, const mps::InvariantState &state, const Config &cfg = {});

/// Solves U v_μ = e^{it} w_μ U from the dominant eigenmatrix of x ↦ Σ v_μ x w_μ†.
/// Throws NotSameState or NotUnitaryMultiple when v and w generate different states.
GaugeSolution gauge_solve(const mps::MpsTuple &v, const mps::MpsTuple &w, const Config &cfg = {});

/// Gauge route and marginal-reversal route; throws Inconclusive if they disagree.
ReflectionEvidence reflection_invariant(const mps::MpsTuple &v, const mps::InvariantState &state,
                                        const mps::PrimitivityCertificate &cert, const Config &cfg = {});
ReflectionEvidence reflection_invariant(const mps::MpsTuple &v, const Config &cfg = {});

/// normalize → primitivity → invariant state → reflected tuple → gauge → ζ.
IndexReport z2_index(const mps::RawTuple &raw, const Config &cfg = {});
/// Same pipeline for an already normalized tuple, keeping its block structure.
IndexReport z2_index(const mps::MpsTuple &tuple, const Config &cfg = {});

} // namespace sptz2::reflection
