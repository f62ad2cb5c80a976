#include "sptz2/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sptz2/error.hpp"

namespace sptz2::linalg {

namespace {

Index exact_sqrt(Index n) {
    auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : -1;
}

// Phase in (−π, π], with numerically-real values snapped onto the real axis so
// that e.g. −1/3 ± 1e-17i sort identically.
double canonical_arg(Complex z) {
    double scale = std::abs(z);
    if(scale == 0.0) return 0.0;
    if(std::abs(z.imag()) <= 1e-12 * scale) return z.real() >= 0.0 ? 0.0 : M_PI;
    return std::arg(z);
}

void require_square(const ComplexMatrix &m, const char *what) {
    if(m.rows() != m.cols() || m.rows() == 0)
        fail(ErrorCode::NotSquare, std::string(what) + ": expected a non-empty square matrix, got " +
                                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

} // namespace

SuperOperator::SuperOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "SuperOperator");
    dim_ = exact_sqrt(matrix_.rows());
    if(dim_ < 1) fail(ErrorCode::NotSquare, "SuperOperator dimension is not a perfect square");
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix &x) const { return unvec(matrix_ * vec(x), dim_); }

ComplexVector vec(const ComplexMatrix &x) { return x.reshaped(); }

ComplexMatrix unvec(const ComplexVector &x, Index k) { return x.reshaped(k, x.size() / k); }

double hermiticity_defect(const ComplexMatrix &h) {
    double norm = h.norm();
    if(norm == 0.0) return 0.0;
    return (h - h.adjoint()).norm() / norm;
}

ComplexMatrix hermitian_part(const ComplexMatrix &h) { return 0.5 * (h + h.adjoint()); }

void fix_phase_largest(ComplexMatrix &x) {
    double largest = x.cwiseAbs().maxCoeff();
    if(largest == 0.0) return;
    const Complex *data = x.data();
    for(Index i = 0; i < x.size(); ++i) {
        if(std::abs(data[i]) >= (1.0 - 1e-9) * largest) {
            x *= std::conj(data[i]) / std::abs(data[i]);
            return;
        }
    }
}

HermitianEig herm_eig(const ComplexMatrix &h, double herm_tol) {
    require_square(h, "herm_eig");
    double defect = hermiticity_defect(h);
    if(defect > herm_tol)
        fail(ErrorCode::NotHermitian, "relative Hermiticity defect " + std::to_string(defect));

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
    if(solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");

    HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
    for(Index c = 0; c < out.vectors.cols(); ++c) {
        auto col        = out.vectors.col(c);
        double largest  = col.cwiseAbs().maxCoeff();
        for(Index r = 0; r < col.size(); ++r) {
            if(std::abs(col(r)) > 1e-8 * largest) {
                col *= std::conj(col(r)) / std::abs(col(r));
                break;
            }
        }
    }
    return out;
}

void sort_spectrum(std::vector<Complex> &values) {
    std::stable_sort(values.begin(), values.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
    // Moduli that agree to 1e-10 form one group, ordered by phase.
    auto begin = values.begin();
    while(begin != values.end()) {
        double head = std::abs(*begin);
        auto end    = std::find_if(begin, values.end(), [&](Complex z) {
            return head - std::abs(z) > 1e-10 * std::max(1.0, head);
        });
        std::stable_sort(begin, end, [](Complex a, Complex b) { return canonical_arg(a) < canonical_arg(b); });
        begin = end;
    }
}

std::vector<Complex> spectrum(const ComplexMatrix &m) {
    require_square(m, "spectrum");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
    if(solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "dense eigensolver did not converge");
    std::vector<Complex> values(solver.eigenvalues().begin(), solver.eigenvalues().end());
    sort_spectrum(values);
    return values;
}

std::vector<EigenPair> peripheral_eigs(const SuperOperator &op, double tol, double residual_tol) {
    if(!(tol > 0.0 && tol < 0.5)) fail(ErrorCode::ConvergenceFailure, "peripheral tolerance must lie in (0, 0.5)");
    if(!op.matrix().allFinite()) fail(ErrorCode::ConvergenceFailure, "superoperator has non-finite entries");

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(op.matrix(), true);
    if(solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "dense eigensolver did not converge");

    const auto &values = solver.eigenvalues();
    double radius      = values.cwiseAbs().maxCoeff();

    std::vector<Index> picked;
    for(Index i = 0; i < values.size(); ++i)
        if(std::abs(values(i)) >= radius - tol) picked.push_back(i);
    std::stable_sort(picked.begin(), picked.end(), [&](Index a, Index b) {
        double ma = std::abs(values(a)), mb = std::abs(values(b));
        if(std::abs(ma - mb) > 1e-10 * std::max(1.0, radius)) return ma > mb;
        return canonical_arg(values(a)) < canonical_arg(values(b));
    });

    std::vector<EigenPair> out;
    out.reserve(picked.size());
    for(Index i : picked) {
        ComplexMatrix m = unvec(solver.eigenvectors().col(i), op.dim());
        m /= m.norm();
        fix_phase_largest(m);
        double residual = (op.apply(m) - values(i) * m).norm();
        if(residual > residual_tol)
            fail(ErrorCode::ConvergenceFailure, "peripheral eigenpair residual " + std::to_string(residual));
        out.push_back({values(i), std::move(m), residual});
    }
    return out;
}

ComplexMatrix psd_power(const ComplexMatrix &rho, double p, double rank_tol, double herm_tol) {
    auto eig        = herm_eig(rho, herm_tol);
    double largest  = std::max(0.0, eig.values.maxCoeff());
    double smallest = eig.values.minCoeff();
    if(smallest < -rank_tol * largest)
        fail(ErrorCode::NegativeEigenvalue, "eigenvalue " + std::to_string(smallest) + " below −rank_tol·max");

    RealVector powered(eig.values.size());
    for(Index i = 0; i < eig.values.size(); ++i) {
        double w   = eig.values(i);
        powered(i) = (largest > 0.0 && w > rank_tol * largest) ? std::pow(w, p) : 0.0;
    }
    ComplexMatrix out = eig.vectors * powered.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return hermitian_part(out);
}

PolarResult polar_unitary(const ComplexMatrix &x, double tol) {
    require_square(x, "polar_unitary");
    Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector &s = svd.singularValues();
    if(s(0) == 0.0 || s(s.size() - 1) < tol * s(0))
        fail(ErrorCode::RankDeficient, "smallest singular value " + std::to_string(s(s.size() - 1)) +
                                           " below tol·largest");
    ComplexMatrix u  = svd.matrixU() * svd.matrixV().adjoint();
    double mean      = s.mean();
    double deviation = (x - mean * u).norm() / x.norm();
    return {std::move(u), deviation};
}

} // namespace sptz2::linalg
