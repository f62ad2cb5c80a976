#pragma once

#include <span>
#include <vector>

#include "sptz2/common.hpp"

/// Dense complex linear-algebra kernel.
///
/// Conventions used by every caller:
///  - superoperators act on k×k matrices through column-stacking, so
///    vec(A X B) = (Bᵀ ⊗ A) vec(X);
///  - eigenvectors of superoperators have their largest-magnitude entry made
///    real-positive (first such entry in column-major order on ties);
///  - Hermitian eigenvectors have their first significant component made
///    real-positive.
/// All functions are pure and deterministic.
namespace sptz2::linalg {

struct HermitianEig {
    RealVector values;     ///< ascending
    ComplexMatrix vectors; ///< orthonormal columns
};

/// Linear map on k×k matrices stored as a k²×k² matrix (column-stacking).
class SuperOperator {
public:
    explicit SuperOperator(ComplexMatrix matrix);

    Index dim() const noexcept { return dim_; }
    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    ComplexMatrix apply(const ComplexMatrix &x) const;

private:
    ComplexMatrix matrix_;
    Index dim_;
};

struct EigenPair {
    Complex value;
    ComplexMatrix matrix; ///< unit Frobenius norm, phase-fixed
    double residual;      ///< ‖L(M) − λM‖_F
};

struct PolarResult {
    ComplexMatrix unitary;
    double deviation; ///< ‖X − c·U‖_F / ‖X‖_F with c the mean singular value
};

ComplexVector vec(const ComplexMatrix &x);
ComplexMatrix unvec(const ComplexVector &x, Index k);

/// Relative Hermiticity defect ‖H − H†‖_F / ‖H‖_F (0 for the zero matrix).
double hermiticity_defect(const ComplexMatrix &h);
ComplexMatrix hermitian_part(const ComplexMatrix &h);

/// Rotates `x` so that its largest-magnitude entry is real and positive.
void fix_phase_largest(ComplexMatrix &x);

HermitianEig herm_eig(const ComplexMatrix &h, double herm_tol = 1e-8);

/// All eigenvalues sorted by modulus (descending), then by phase in (−π, π].
std::vector<Complex> spectrum(const ComplexMatrix &m);

/// Eigenpairs with |λ| ≥ ρ(L) − tol, from the full dense spectrum.
std::vector<EigenPair> peripheral_eigs(const SuperOperator &op, double tol,
                                       double residual_tol = 1e-8);

/// ρ^p on the support of ρ. Eigenvalues below rank_tol·max are treated as 0.
ComplexMatrix psd_power(const ComplexMatrix &rho, double p, double rank_tol = 1e-12,
                        double herm_tol = 1e-8);

/// U = X (X†X)^{-1/2}.
PolarResult polar_unitary(const ComplexMatrix &x, double tol = 1e-10);

/// Modulus-then-phase ordering used for every reported spectrum.
void sort_spectrum(std::vector<Complex> &values);

} // namespace sptz2::linalg
