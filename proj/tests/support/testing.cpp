#include "testing.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>

namespace sptz2::testing {

ComplexMatrix random_complex(Rng &rng, Index rows, Index cols) {
    std::normal_distribution<double> n;
    ComplexMatrix out(rows, cols);
    for(Index j = 0; j < cols; ++j)
        for(Index i = 0; i < rows; ++i) out(i, j) = Complex(n(rng), n(rng));
    return out;
}

ComplexMatrix random_hermitian(Rng &rng, Index k) {
    ComplexMatrix a = random_complex(rng, k, k);
    return (a + a.adjoint()) / 2.0;
}

ComplexMatrix random_psd(Rng &rng, Index k, Index rank) {
    ComplexMatrix a = random_complex(rng, k, rank);
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

ComplexMatrix random_unitary(Rng &rng, Index k) {
    Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(rng, k, k));
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for(Index j = 0; j < k; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

mps::RawTuple random_tuple(Rng &rng, Index d, Index k) {
    mps::RawTuple v;
    for(Index mu = 0; mu < d; ++mu) v.push_back(random_complex(rng, k, k));
    return v;
}

mps::RawTuple random_reflection_invariant(Rng &rng, Index d, Index k, Sign zeta) {
    std::normal_distribution<double> n;
    ComplexMatrix j = ComplexMatrix::Identity(k, k);
    if(zeta == Sign::minus) {
        ComplexMatrix eps(2, 2);
        eps << 0, 1, -1, 0;
        j = Eigen::kroneckerProduct(ComplexMatrix::Identity(k / 2, k / 2), eps).eval();
    }
    mps::RawTuple v;
    for(Index mu = 0; mu < d; ++mu) {
        Eigen::MatrixXd a(k, k);
        for(Index c = 0; c < k; ++c)
            for(Index r = 0; r < k; ++r) a(r, c) = n(rng);
        ComplexMatrix s = ((a + a.transpose()) / 2.0).cast<Complex>();
        v.push_back(j * s);
    }
    return v;
}

mps::RawTuple conjugate(const mps::RawTuple &v, const ComplexMatrix &w, Complex phase) {
    mps::RawTuple out;
    for(const auto &m : v) out.push_back(phase * w * m * w.adjoint());
    return out;
}

ComplexMatrix kron(const std::vector<ComplexMatrix> &factors) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for(const auto &f : factors) out = Eigen::kroneckerProduct(out, f).eval();
    return out;
}

ComplexMatrix transfer_matrix_oracle(const mps::RawTuple &v) {
    const Index k = v.front().rows();
    ComplexMatrix t = ComplexMatrix::Zero(k * k, k * k);
    for(const auto &m : v)
        for(Index a = 0; a < k; ++a)
            for(Index b = 0; b < k; ++b) t.block(a * k, b * k, k, k) += std::conj(m(a, b)) * m;
    return t;
}

std::vector<Complex> eigenvalues(const ComplexMatrix &m) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
    std::vector<Complex> out(es.eigenvalues().begin(), es.eigenvalues().end());
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if(std::abs(std::abs(a) - std::abs(b)) > 1e-9) return std::abs(a) > std::abs(b);
        return a.real() > b.real();
    });
    return out;
}

ComplexMatrix marginal_oracle(const mps::RawTuple &v, const ComplexMatrix &rho, Index l) {
    const Index d = static_cast<Index>(v.size()), k = v.front().rows();
    Index dim     = 1;
    for(Index i = 0; i < l; ++i) dim *= d;
    std::vector<ComplexMatrix> words(static_cast<std::size_t>(dim));
    for(Index a = 0; a < dim; ++a) {
        std::vector<Index> digits(static_cast<std::size_t>(l));
        for(Index site = l - 1, rest = a; site >= 0; --site, rest /= d) digits[static_cast<std::size_t>(site)] = rest % d;
        ComplexMatrix w = ComplexMatrix::Identity(k, k);
        for(auto digit : digits) w = w * v[static_cast<std::size_t>(digit)];
        words[static_cast<std::size_t>(a)] = w;
    }
    ComplexMatrix out(dim, dim);
    for(Index a = 0; a < dim; ++a)
        for(Index b = 0; b < dim; ++b)
            out(a, b) = (rho * words[static_cast<std::size_t>(a)] * words[static_cast<std::size_t>(b)].adjoint()).trace();
    return out;
}

ComplexMatrix fixed_point_by_iteration(const mps::RawTuple &v, int steps) {
    const Index k = v.front().rows();
    ComplexMatrix x = ComplexMatrix::Identity(k, k) / double(k);
    for(int s = 0; s < steps; ++s) {
        ComplexMatrix next = ComplexMatrix::Zero(k, k);
        for(const auto &m : v) next += m.adjoint() * x * m;
        // Averaging damps a possible −1 peripheral component.
        x = (next + x) / 2.0;
        x /= x.trace();
    }
    return x;
}

ComplexMatrix site_permutation(Index d, Index n, const std::vector<Index> &image) {
    Index dim = 1;
    for(Index i = 0; i < n; ++i) dim *= d;
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    std::vector<Index> digits(static_cast<std::size_t>(n)), moved(static_cast<std::size_t>(n));
    for(Index col = 0; col < dim; ++col) {
        for(Index s = n - 1, rest = col; s >= 0; --s, rest /= d) digits[static_cast<std::size_t>(s)] = rest % d;
        for(Index s = 0; s < n; ++s)
            moved[static_cast<std::size_t>(image[static_cast<std::size_t>(s)])] = digits[static_cast<std::size_t>(s)];
        Index row = 0;
        for(Index s = 0; s < n; ++s) row = row * d + moved[static_cast<std::size_t>(s)];
        p(row, col) = 1.0;
    }
    return p;
}

ComplexMatrix embed_open(const ComplexMatrix &h, Index d, Index m, Index n, Index i) {
    std::vector<ComplexMatrix> factors;
    for(Index s = 0; s < i; ++s) factors.push_back(ComplexMatrix::Identity(d, d));
    factors.push_back(h);
    for(Index s = i + m; s < n; ++s) factors.push_back(ComplexMatrix::Identity(d, d));
    return kron(factors);
}

} // namespace sptz2::testing
