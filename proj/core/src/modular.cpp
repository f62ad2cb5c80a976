#include "sptz2/modular.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "sptz2/error.hpp"
#include "sptz2/linalg.hpp"

namespace sptz2::modular {

namespace {

// (1 ⊗ x) Ω, as a vector of C^m ⊗ C^m.
ComplexVector act_right(const ComplexMatrix &m, const ComplexMatrix &x) {
    ComplexMatrix image = m * x.transpose();
    return image.transpose().reshaped();
}

// Top-`rank` eigenvectors of a reduced density matrix.
ComplexMatrix support_basis(const ComplexMatrix &reduced, Index rank) {
    auto eig = linalg::herm_eig(reduced);
    return eig.vectors.rightCols(rank).rowwise().reverse();
}

ComplexMatrix random_operator(std::mt19937_64 &rng, Index r) {
    std::normal_distribution<double> normal;
    ComplexMatrix x(r, r);
    for(Index j = 0; j < r; ++j)
        for(Index i = 0; i < r; ++i) x(i, j) = Complex(normal(rng), normal(rng));
    return x / x.norm();
}

} // namespace

double ModularResiduals::max_identity() const noexcept {
    return std::max({s_action, j_square, delta_fix, j_fix, delta_formula, j_formula});
}

BipartiteVector BipartiteVector::normalized(ComplexMatrix coefficients) {
    if(coefficients.rows() != coefficients.cols() || coefficients.rows() == 0)
        fail(ErrorCode::NotSquare, "bipartite coefficient matrix must be square");
    if(!coefficients.allFinite()) fail(ErrorCode::NotUnitVector, "non-finite coefficients");
    double norm = coefficients.norm();
    if(norm == 0.0) fail(ErrorCode::ZeroVector, "bipartite vector is zero");
    return BipartiteVector(coefficients / norm);
}

BipartiteVector BipartiteVector::from_unit(ComplexMatrix coefficients, double tol) {
    if(coefficients.rows() != coefficients.cols() || coefficients.rows() == 0)
        fail(ErrorCode::NotSquare, "bipartite coefficient matrix must be square");
    double norm = coefficients.norm();
    if(norm == 0.0) fail(ErrorCode::ZeroVector, "bipartite vector is zero");
    if(!(std::abs(norm - 1.0) <= tol)) fail(ErrorCode::NotUnitVector, "‖M‖_F = " + std::to_string(norm));
    return BipartiteVector(std::move(coefficients));
}

ComplexVector BipartiteVector::as_vector() const { return coefficients_.transpose().reshaped(); }

SchmidtData schmidt(const BipartiteVector &omega, double rank_tol) {
    const ComplexMatrix &m = omega.coefficients();
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector &s = svd.singularValues();
    Index rank          = 0;
    while(rank < s.size() && s(rank) > rank_tol) ++rank;
    if(rank == 0) fail(ErrorCode::ZeroVector, "no singular value above rank_tol");

    // M = Σ σ_k ξ_k ζ_kᵀ, so ζ_k is the conjugate of the right singular vector.
    ComplexMatrix left  = svd.matrixU().leftCols(rank);
    ComplexMatrix right = svd.matrixV().leftCols(rank).conjugate();
    for(Index k = 0; k < rank; ++k) {
        ComplexMatrix col = right.col(k);
        linalg::fix_phase_largest(col);
        Index pivot = 0, unused = 0;
        col.cwiseAbs().maxCoeff(&pivot, &unused);
        Complex rotation = col(pivot) / right(pivot, k);
        right.col(k)     = col;
        left.col(k) /= rotation;
    }

    RealVector lambda = s.head(rank).array().square();
    ComplexMatrix u   = left * right.adjoint();
    ComplexMatrix rebuilt =
        left * lambda.cwiseSqrt().cast<Complex>().asDiagonal() * right.transpose();
    double residual = (m - rebuilt).norm();
    return {std::move(lambda), std::move(left), std::move(right), std::move(u), rank, residual};
}

std::optional<Sign> swap_sign(const BipartiteVector &omega, double tol) {
    const ComplexMatrix &m = omega.coefficients();
    if((m.transpose() - m).norm() <= tol) return Sign::plus;
    if((m.transpose() + m).norm() <= tol) return Sign::minus;
    return std::nullopt;
}

ModularReport modular_data(const BipartiteVector &omega, const Config &cfg) {
    const ComplexMatrix &m = omega.coefficients();
    const Index dim        = omega.m();
    auto sd                = schmidt(omega, cfg.tol.rank);
    const Index r          = sd.support_dim;
    if(r == 0) fail(ErrorCode::DegenerateSupport, "empty support");

    // Coordinates on s_L C^m ⊗ s_R C^m from the reduced density matrices.
    ComplexMatrix left_support  = support_basis(m * m.adjoint(), r);
    ComplexMatrix right_support = support_basis((m.adjoint() * m).transpose(), r);
    ComplexMatrix q             = Eigen::kroneckerProduct(left_support, right_support).eval();
    const Index n               = r * r;
    const ComplexVector omega_q = q.adjoint() * omega.as_vector();

    // S (1⊗x_ab)Ω = (1⊗x_ba)Ω for the matrix units x_ab = |f_a⟩⟨f_b| of s_R C^m.
    ComplexMatrix y(n, n), y_adj(n, n);
    for(Index a = 0; a < r; ++a)
        for(Index b = 0; b < r; ++b) {
            ComplexMatrix x       = right_support.col(a) * right_support.col(b).adjoint();
            y.col(a * r + b)      = q.adjoint() * act_right(m, x);
            y_adj.col(a * r + b)  = q.adjoint() * act_right(m, x.adjoint());
        }
    // Ŝ conj(Y) = Y'
    ComplexMatrix s_hat = y.conjugate().transpose().fullPivLu().solve(y_adj.transpose()).transpose();

    // S = Ŝ K = (W K)(conj P) with Ŝ = W P.
    Eigen::JacobiSVD<ComplexMatrix> svd(s_hat, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ComplexMatrix j_hat = svd.matrixU() * svd.matrixV().adjoint();
    ComplexMatrix delta_half =
        (svd.matrixV() * svd.singularValues().cast<Complex>().asDiagonal() * svd.matrixV().adjoint()).conjugate();

    // Closed-form ingredients from the Schmidt data.
    ComplexMatrix rho        = sd.right_basis * sd.lambda.cast<Complex>().asDiagonal() * sd.right_basis.adjoint();
    ComplexMatrix rho_half   = linalg::psd_power(rho, 0.5, cfg.tol.rank);
    ComplexMatrix rho_ihalf  = linalg::psd_power(rho, -0.5, cfg.tol.rank);
    ComplexMatrix conj_hat   = sd.right_basis * sd.right_basis.transpose(); // c ψ = Ĉ ψ̄
    ComplexMatrix identity_m = ComplexMatrix::Identity(dim, dim);
    ComplexMatrix s_right    = sd.right_basis * sd.right_basis.adjoint();

    ModularResiduals res{};
    res.j_square  = (j_hat * j_hat.conjugate() - ComplexMatrix::Identity(n, n)).norm();
    res.delta_fix = (delta_half * delta_half * omega_q - omega_q).norm();
    res.j_fix     = (j_hat * omega_q.conjugate() - omega_q).norm();

    std::mt19937_64 rng(cfg.seed);
    for(std::size_t trial = 0; trial < std::max<std::size_t>(cfg.panel, 1); ++trial) {
        ComplexMatrix x = right_support * random_operator(rng, r) * right_support.adjoint();

        ComplexVector a = q.adjoint() * act_right(m, x);
        ComplexVector b = q.adjoint() * act_right(m, x.adjoint());
        res.s_action    = std::max(res.s_action, (j_hat * (delta_half * a).conjugate() - b).norm());

        ComplexVector predicted = q.adjoint() * act_right(m, rho_half * x * rho_ihalf);
        res.delta_formula       = std::max(res.delta_formula, (delta_half * a - predicted).norm());

        ComplexMatrix on_right = q.adjoint() * Eigen::kroneckerProduct(identity_m, x).eval() * q;
        ComplexMatrix left_op  = sd.u * conj_hat * x.conjugate() * conj_hat.conjugate() * sd.u.adjoint();
        ComplexMatrix expected = q.adjoint() * Eigen::kroneckerProduct(left_op, identity_m).eval() * q;
        res.j_formula = std::max(res.j_formula, (j_hat * on_right.conjugate() * j_hat.adjoint() - expected).norm());
    }

    // θ = u c*, θ² ψ = u Ĉ ū Ĉ̄ ψ.
    ComplexMatrix theta_sq = sd.u * conj_hat * sd.u.conjugate() * conj_hat.conjugate();
    double mean            = theta_sq.trace().real() / double(r);
    Sign kappa_candidate   = sign_of(mean >= 0.0);
    res.theta_square       = (theta_sq - double(to_int(kappa_candidate)) * s_right).norm();

    ModularReport out{};
    out.sigma = swap_sign(omega, cfg.tol.swap);
    if(res.theta_square <= cfg.tol.modular) out.kappa = kappa_candidate;
    if(out.sigma) {
        ComplexMatrix mirrored = conj_hat * sd.u.adjoint().conjugate() * conj_hat.conjugate();
        res.u_relation         = (sd.u - double(to_int(*out.sigma)) * mirrored).norm();
    }
    out.residuals   = res;
    out.support_dim = r;
    out.lambda      = sd.lambda;
    return out;
}

BipartiteVector bond_vector(const ComplexMatrix &unitary_eigenbasis, const RealVector &rho_diag) {
    if(unitary_eigenbasis.rows() != rho_diag.size() || unitary_eigenbasis.cols() != rho_diag.size())
        fail(ErrorCode::NotSquare, "bond_vector: U and ρ dimensions differ");
    ComplexMatrix m = unitary_eigenbasis.adjoint() * rho_diag.cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal();
    return BipartiteVector::normalized(std::move(m));
}

BipartiteVector bond_vector(const reflection::IndexReport &report) {
    return bond_vector(report.unitary_eigenbasis, report.reflected.rho_diag);
}

} // namespace sptz2::modular
