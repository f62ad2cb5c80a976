#include "sptz2/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "sptz2/error.hpp"

namespace sptz2::mps {

namespace {

// Normalized tuples with a residual this small are returned untouched.
constexpr double exact_normalization = 1e-12;

// Relative threshold for the rank of a set of product strings.
constexpr double span_rank_tol = 1e-10;

ComplexMatrix orthonormal_columns(const ComplexMatrix &candidates) {
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(candidates);
    qr.setThreshold(span_rank_tol);
    Index rank      = qr.rank();
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(candidates.rows(), rank);
    return q;
}

bool same_subspace(const ComplexMatrix &a, const ComplexMatrix &b) {
    if(a.cols() != b.cols()) return false;
    return (b - a * (a.adjoint() * b)).norm() < 1e-8 * std::max<double>(1.0, std::sqrt(double(b.cols())));
}

} // namespace

void validate(std::span<const ComplexMatrix> v) {
    if(v.size() < 2) fail(ErrorCode::InvalidTuple, "physical dimension d must be at least 2");
    Index k = v.front().rows();
    if(k < 1) fail(ErrorCode::InvalidTuple, "bond dimension k must be at least 1");
    for(std::size_t mu = 0; mu < v.size(); ++mu) {
        if(v[mu].rows() != k || v[mu].cols() != k)
            fail(ErrorCode::InvalidTuple, "matrix " + std::to_string(mu) + " is not " + std::to_string(k) + "x" +
                                              std::to_string(k));
        if(!v[mu].allFinite()) fail(ErrorCode::InvalidTuple, "matrix " + std::to_string(mu) + " has non-finite entries");
    }
}

double normalization_residual(std::span<const ComplexMatrix> v) {
    Index k           = v.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(k, k);
    for(const auto &a : v) sum.noalias() += a * a.adjoint();
    return (sum - ComplexMatrix::Identity(k, k)).norm();
}

MpsTuple MpsTuple::from_normalized(RawTuple matrices, double norm_tol) {
    validate(matrices);
    double residual = mps::normalization_residual(matrices);
    if(!(residual <= norm_tol))
        fail(ErrorCode::NormalizationBroken, "‖Σ v v† − 1‖_F = " + std::to_string(residual));
    return MpsTuple(std::move(matrices), residual);
}

MpsTuple MpsTuple::with_sites(Index site_d, Index sites) const {
    Index expected = 1;
    for(Index i = 0; i < sites; ++i) expected *= site_d;
    if(site_d < 2 || sites < 1 || expected != d())
        fail(ErrorCode::InvalidTuple, "d = " + std::to_string(d()) + " is not " + std::to_string(site_d) + "^" +
                                          std::to_string(sites));
    MpsTuple out = *this;
    out.site_d_  = site_d;
    out.sites_   = sites;
    return out;
}

linalg::SuperOperator transfer_operator(std::span<const ComplexMatrix> v) { return mixed_transfer_operator(v, v); }

linalg::SuperOperator adjoint_transfer_operator(std::span<const ComplexMatrix> v) {
    Index k = v.front().rows();
    ComplexMatrix m = ComplexMatrix::Zero(k * k, k * k);
    for(const auto &a : v) m += Eigen::kroneckerProduct(a.transpose(), a.adjoint());
    return linalg::SuperOperator(std::move(m));
}

linalg::SuperOperator mixed_transfer_operator(std::span<const ComplexMatrix> v, std::span<const ComplexMatrix> w) {
    Index k = v.front().rows();
    ComplexMatrix m = ComplexMatrix::Zero(k * k, k * k);
    for(std::size_t mu = 0; mu < v.size(); ++mu) m += Eigen::kroneckerProduct(w[mu].conjugate(), v[mu]);
    return linalg::SuperOperator(std::move(m));
}

MpsTuple normalize(const RawTuple &raw, const Config &cfg) {
    validate(raw);
    if(normalization_residual(raw) <= exact_normalization) return MpsTuple::from_normalized(raw, cfg.tol.norm);

    auto peripheral = linalg::peripheral_eigs(transfer_operator(raw), cfg.tol.peripheral);
    auto dominant   = std::max_element(peripheral.begin(), peripheral.end(),
                                       [](const auto &a, const auto &b) { return a.value.real() < b.value.real(); });
    double r        = dominant->value.real();
    if(!(r > 0.0) || std::abs(dominant->value.imag()) > cfg.tol.peripheral * r)
        fail(ErrorCode::NotNormalizable, "transfer map has no positive dominant eigenvalue");

    ComplexMatrix e = linalg::hermitian_part(dominant->matrix);
    if(e.trace().real() < 0.0) e = -e;
    auto eig = linalg::herm_eig(e, cfg.tol.herm);
    if(eig.values(0) <= cfg.tol.rank * eig.values(eig.values.size() - 1))
        fail(ErrorCode::NotNormalizable, "dominant eigenmatrix is not positive definite (reducible tuple)");

    ComplexMatrix half     = linalg::psd_power(e, 0.5, cfg.tol.rank, cfg.tol.herm);
    ComplexMatrix inv_half = linalg::psd_power(e, -0.5, cfg.tol.rank, cfg.tol.herm);
    double scale           = 1.0 / std::sqrt(r);
    RawTuple w;
    w.reserve(raw.size());
    for(const auto &a : raw) w.push_back(scale * inv_half * a * half);
    return MpsTuple::from_normalized(std::move(w), cfg.tol.norm);
}

PrimitivityCertificate primitivity(const MpsTuple &v, const Config &cfg) {
    const Index k      = v.k();
    const Index target = k * k;
    const Index l_max  = cfg.l_max ? static_cast<Index>(cfg.l_max) : target * target;

    // Span certificate: K_{l+1} = span{ v_μ X : X ∈ K_l }.
    ComplexMatrix candidates(target, v.d());
    for(Index mu = 0; mu < v.d(); ++mu) candidates.col(mu) = linalg::vec(v[mu]);
    ComplexMatrix basis = orthonormal_columns(candidates);

    std::vector<ComplexMatrix> history;
    std::optional<Index> injectivity;
    Index l = 1;
    while(true) {
        if(basis.cols() == target) {
            injectivity = l;
            break;
        }
        if(l >= l_max) break;
        // The sequence K_l is deterministic, so a repeated subspace means it cycles forever.
        bool cycled = std::any_of(history.begin(), history.end(),
                                  [&](const ComplexMatrix &old) { return same_subspace(old, basis); });
        if(cycled) break;
        history.push_back(basis);

        ComplexMatrix next(target, v.d() * basis.cols());
        for(Index mu = 0; mu < v.d(); ++mu)
            for(Index j = 0; j < basis.cols(); ++j)
                next.col(mu * basis.cols() + j) = linalg::vec(v[mu] * linalg::unvec(basis.col(j), k));
        basis = orthonormal_columns(next);
        ++l;
    }

    // Spectral certificate: a simple peripheral eigenvalue with a faithful fixed point.
    auto transfer   = transfer_operator(v.matrices());
    auto peripheral = linalg::peripheral_eigs(transfer, cfg.tol.peripheral);
    auto values     = linalg::spectrum(transfer.matrix());
    double gap      = values.size() > 1 ? 1.0 - std::abs(values[1]) : 1.0;

    bool faithful = false;
    if(peripheral.size() == 1) {
        auto fixed = linalg::peripheral_eigs(adjoint_transfer_operator(v.matrices()), cfg.tol.peripheral);
        if(fixed.size() == 1) {
            ComplexMatrix rho = linalg::hermitian_part(fixed.front().matrix);
            if(rho.trace().real() < 0.0) rho = -rho;
            auto eig = linalg::herm_eig(rho, cfg.tol.herm);
            faithful = eig.values(0) > cfg.tol.rank * eig.values(eig.values.size() - 1);
        }
    }

    bool span_ok     = injectivity.has_value();
    bool spectral_ok = peripheral.size() == 1 && faithful;
    if(span_ok != spectral_ok)
        fail(ErrorCode::PrimitivityDisagreement,
             std::string("span certificate says ") + (span_ok ? "primitive" : "not primitive") +
                 " but spectral certificate says " + (spectral_ok ? "primitive" : "not primitive"));

    return {span_ok, injectivity, basis.cols(), l_max, static_cast<Index>(peripheral.size()), gap, faithful};
}

InvariantState invariant_state(const MpsTuple &v, const Config &cfg) {
    auto fixed = linalg::peripheral_eigs(adjoint_transfer_operator(v.matrices()), cfg.tol.peripheral);
    if(fixed.size() != 1)
        fail(ErrorCode::NotPrimitive, std::to_string(fixed.size()) + " peripheral eigenvalues in the adjoint channel");

    ComplexMatrix rho = linalg::hermitian_part(fixed.front().matrix);
    Complex trace     = rho.trace();
    if(std::abs(trace) < 1e-12) fail(ErrorCode::NotPrimitive, "fixed point of the adjoint channel is traceless");
    rho /= trace.real();
    rho = linalg::hermitian_part(rho);

    ComplexMatrix image = ComplexMatrix::Zero(v.k(), v.k());
    for(const auto &a : v.matrices()) image.noalias() += a.adjoint() * rho * a;
    double residual = (image - rho).norm();

    auto eig      = linalg::herm_eig(rho, cfg.tol.herm);
    double lowest = eig.values(0);
    if(lowest <= cfg.tol.rank) fail(ErrorCode::NotFaithful, "smallest eigenvalue of ρ is " + std::to_string(lowest));
    return {std::move(rho), residual, lowest};
}

Index window_dimension(Index d, Index l, std::size_t cap) {
    if(l < 1) fail(ErrorCode::WindowTooLarge, "window length must be at least 1");
    Index dim = 1;
    for(Index i = 0; i < l; ++i) {
        if(dim > static_cast<Index>(cap) / d)
            fail(ErrorCode::WindowTooLarge, std::to_string(d) + "^" + std::to_string(l) + " exceeds cap " +
                                                std::to_string(cap));
        dim *= d;
    }
    return dim;
}

Marginal marginal(const MpsTuple &v, const InvariantState &state, Index l, const Config &cfg) {
    const Index dim = window_dimension(v.d(), l, cfg.window_cap);
    const Index k   = v.k();

    // Rows of G are vec(ρ^{1/2} v_{μ0}···v_{μ_{l−1}}); the marginal is G G†.
    std::vector<ComplexMatrix> level{linalg::psd_power(state.rho, 0.5, cfg.tol.rank, cfg.tol.herm)};
    for(Index site = 0; site < l; ++site) {
        std::vector<ComplexMatrix> next;
        next.reserve(level.size() * static_cast<std::size_t>(v.d()));
        for(const auto &prefix : level)
            for(Index mu = 0; mu < v.d(); ++mu) next.push_back(prefix * v[mu]);
        level = std::move(next);
    }
    ComplexMatrix g(dim, k * k);
    for(Index row = 0; row < dim; ++row) g.row(row) = linalg::vec(level[static_cast<std::size_t>(row)]).transpose();

    ComplexMatrix matrix = linalg::hermitian_part(g * g.adjoint());

    Eigen::BDCSVD<ComplexMatrix> svd(g, Eigen::ComputeThinU);
    const RealVector &s = svd.singularValues();
    Index rank          = 0;
    while(rank < s.size() && s(rank) * s(rank) > cfg.tol.rank * s(0) * s(0)) ++rank;
    ComplexMatrix support = svd.matrixU().leftCols(rank);
    return {l, std::move(matrix), std::move(support), rank};
}

MpsTuple block(const MpsTuple &v, Index b, const Config &cfg) {
    window_dimension(v.d(), b, cfg.window_cap);
    RawTuple level(v.matrices().begin(), v.matrices().end());
    for(Index site = 1; site < b; ++site) {
        RawTuple next;
        next.reserve(level.size() * static_cast<std::size_t>(v.d()));
        for(const auto &prefix : level)
            for(Index mu = 0; mu < v.d(); ++mu) next.push_back(prefix * v[mu]);
        level = std::move(next);
    }
    return MpsTuple::from_normalized(std::move(level), cfg.tol.norm)
        .with_sites(v.site_dimension(), b * v.sites_per_symbol());
}

std::vector<Complex> transfer_spectrum(const MpsTuple &v) {
    return linalg::spectrum(transfer_operator(v.matrices()).matrix());
}

Index reversed_symbol(Index symbol, Index site_d, Index sites) {
    Index r = 0;
    for(Index site = 0; site < sites; ++site) {
        r = r * site_d + symbol % site_d;
        symbol /= site_d;
    }
    return r;
}

ComplexMatrix reverse_sites(const ComplexMatrix &window, Index d, Index l) {
    const Index dim = window.rows();
    std::vector<Index> reversed(static_cast<std::size_t>(dim));
    for(Index i = 0; i < dim; ++i) reversed[static_cast<std::size_t>(i)] = reversed_symbol(i, d, l);
    ComplexMatrix out(dim, dim);
    for(Index j = 0; j < dim; ++j)
        for(Index i = 0; i < dim; ++i)
            out(reversed[static_cast<std::size_t>(i)], reversed[static_cast<std::size_t>(j)]) = window(i, j);
    return out;
}

} // namespace sptz2::mps
