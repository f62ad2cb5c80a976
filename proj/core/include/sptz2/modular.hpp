#pragma once

#include <optional>

#include "sptz2/common.hpp"
#include "sptz2/config.hpp"
#include "sptz2/reflection.hpp"

/// Finite-dimensional modular theory of a bipartite vector
/// Ω = Σ_{jl} M_{jl} e_j ⊗ e_l in C^m ⊗ C^m, with the algebra 1 ⊗ B(C^m)
/// acting on the right factor.
///
/// Vectors of C^m ⊗ C^m are indexed j·m + l (left factor most significant).
/// Anti-linear operators A are stored as the matrix Â with A ψ = Â ψ̄.
namespace sptz2::modular {

class BipartiteVector {
public:
    /// Rescales M to unit Frobenius norm; throws ZeroVector for M = 0.
    static BipartiteVector normalized(ComplexMatrix coefficients);
    /// Requires ‖M‖_F = 1 within `tol`.
    static BipartiteVector from_unit(ComplexMatrix coefficients, double tol = 1e-10);

    Index m() const noexcept { return coefficients_.rows(); }
    const ComplexMatrix &coefficients() const noexcept { return coefficients_; }
    ComplexVector as_vector() const;

private:
    explicit BipartiteVector(ComplexMatrix c) : coefficients_(std::move(c)) {}
    ComplexMatrix coefficients_;
};

/// Ω = Σ_k √λ_k ξ_k ⊗ ζ_k on the support, with u ζ_k = ξ_k.
struct SchmidtData {
    RealVector lambda;         ///< descending, Σ λ = 1
    ComplexMatrix left_basis;  ///< ξ_k as columns
    ComplexMatrix right_basis; ///< ζ_k as columns
    ComplexMatrix u;           ///< Σ |ξ_k⟩⟨ζ_k|
    Index support_dim;
    double reconstruction_residual; ///< ‖M − Σ √λ_k ξ_k ζ_kᵀ‖_F
};

struct ModularResiduals {
    double s_action;      ///< ‖S(1⊗x)Ω − (1⊗x†)Ω‖ with S = JΔ^{1/2}
    double j_square;      ///< ‖J² − s⊗s‖
    double delta_fix;     ///< ‖ΔΩ − Ω‖
    double j_fix;         ///< ‖JΩ − Ω‖
    double delta_formula; ///< ‖Δ^{1/2}(1⊗x)Ω − (1⊗ρ^{1/2}xρ^{-1/2})Ω‖
    double j_formula;     ///< ‖J(1⊗x)J* − (u c* x c u*)⊗s‖
    double theta_square;  ///< ‖θ² − κ s‖ for θ = u c*
    std::optional<double> u_relation; ///< ‖u − σ c u* c‖ when σ is defined

    double max_identity() const noexcept;
};

struct ModularReport {
    std::optional<Sign> kappa; ///< defined when θ² = ±s
    std::optional<Sign> sigma; ///< swap sign of Ω
    ModularResiduals residuals;
    Index support_dim;
    RealVector lambda;
};

SchmidtData schmidt(const BipartiteVector &omega, double rank_tol = 1e-12);

/// Builds S from Sx Ω = x*Ω, polar-decomposes it into J Δ^{1/2} and checks the
/// closed-form Schmidt-data expressions against it on a seeded random panel.
ModularReport modular_data(const BipartiteVector &omega, const Config &cfg = {});

/// +1 if Mᵀ = M, −1 if Mᵀ = −M (to `tol`), otherwise undefined.
std::optional<Sign> swap_sign(const BipartiteVector &omega, double tol = 1e-8);

/// Bond vector with coefficient matrix U† ρ^{1/2} in the ρ-eigenbasis.
BipartiteVector bond_vector(const reflection::IndexReport &report);
BipartiteVector bond_vector(const ComplexMatrix &unitary_eigenbasis, const RealVector &rho_diag);

} // namespace sptz2::modular
