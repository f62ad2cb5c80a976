#include "sptz2/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "sptz2/error.hpp"
#include "sptz2/linalg.hpp"

namespace sptz2::hamiltonian {

namespace {

Index checked_power(Index d, Index n, std::size_t cap) {
    Index dim = 1;
    for(Index i = 0; i < n; ++i) {
        dim *= d;
        if(dim > static_cast<Index>(cap))
            fail(ErrorCode::DimensionCap, std::to_string(d) + "^" + std::to_string(n) + " exceeds the ED cap of " +
                                              std::to_string(cap));
    }
    return dim;
}

// Adds h acting on `sites` (in order) to the n-site operator `out`.
void add_local(ComplexMatrix &out, const ComplexMatrix &h, Index d, Index n, const std::vector<Index> &sites) {
    const Index dim = out.rows();
    const Index m   = static_cast<Index>(sites.size());
    std::vector<Index> stride(static_cast<std::size_t>(n));
    for(Index s = n - 1, p = 1; s >= 0; --s, p *= d) stride[static_cast<std::size_t>(s)] = p;

    for(Index col = 0; col < dim; ++col) {
        Index local = 0, rest = col;
        for(Index j = 0; j < m; ++j) {
            Index st    = stride[static_cast<std::size_t>(sites[static_cast<std::size_t>(j)])];
            Index digit = (col / st) % d;
            local       = local * d + digit;
            rest -= digit * st;
        }
        for(Index row_local = 0; row_local < h.rows(); ++row_local) {
            Complex entry = h(row_local, local);
            if(entry == Complex(0)) continue;
            Index row = rest, digits = row_local;
            for(Index j = m - 1; j >= 0; --j) {
                row += (digits % d) * stride[static_cast<std::size_t>(sites[static_cast<std::size_t>(j)])];
                digits /= d;
            }
            out(row, col) += entry;
        }
    }
}

} // namespace

std::string to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

ParentInteraction parent_interaction(const mps::MpsTuple &v, Index m, const Config &cfg,
                                     std::optional<Index> injectivity_length) {
    const Index dim = mps::window_dimension(v.d(), m, cfg.window_cap);
    if(!injectivity_length) injectivity_length = mps::primitivity(v, cfg).injectivity_length;
    auto state    = mps::invariant_state(v, cfg);
    auto marginal = mps::marginal(v, state, m, cfg);

    ComplexMatrix h = ComplexMatrix::Identity(dim, dim) - marginal.support * marginal.support.adjoint();
    ParentInteraction out{v.d(), m, h, dim - marginal.rank, marginal.rank, (h * h - h).norm(), std::nullopt};
    if(!injectivity_length || m < *injectivity_length + 1)
        out.warning = "RangeWarning: m = " + std::to_string(m) + " is below injectivity length + 1" +
                      (injectivity_length ? " = " + std::to_string(*injectivity_length + 1) : std::string());
    return out;
}

ComplexMatrix chain_hamiltonian(const ParentInteraction &hint, const ChainSpec &spec, const Config &cfg) {
    if(spec.n < hint.m)
        fail(ErrorCode::InvalidChain, "chain length " + std::to_string(spec.n) + " is shorter than the range " +
                                          std::to_string(hint.m));
    const Index dim = checked_power(hint.d, spec.n, cfg.ed_cap);
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);

    // A periodic chain of n = m sites still has n distinct translates.
    const Index count = spec.boundary == Boundary::open ? spec.n - hint.m + 1 : spec.n;
    std::vector<Index> sites(static_cast<std::size_t>(hint.m));
    for(Index i = 0; i < count; ++i) {
        for(Index j = 0; j < hint.m; ++j) sites[static_cast<std::size_t>(j)] = (i + j) % spec.n;
        add_local(out, hint.h, hint.d, spec.n, sites);
    }
    return out;
}

EdReport ed_report(const ComplexMatrix &h, const Config &cfg) {
    if(h.rows() != h.cols()) fail(ErrorCode::NotSquare, "Hamiltonian must be square");
    if(h.rows() > static_cast<Index>(cfg.ed_cap))
        fail(ErrorCode::DimensionCap, "dimension " + std::to_string(h.rows()) + " exceeds the ED cap of " +
                                          std::to_string(cfg.ed_cap));
    double defect = linalg::hermiticity_defect(h);
    if(defect > cfg.tol.herm) fail(ErrorCode::NotHermitian, "relative Hermiticity defect " + std::to_string(defect));

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(linalg::hermitian_part(h), Eigen::EigenvaluesOnly);
    if(solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "Hermitian eigensolver failed");
    const RealVector &w = solver.eigenvalues();

    EdReport out{};
    out.dimension     = h.rows();
    out.ground_energy = w(0);
    out.kernel_tol    = cfg.tol.kernel * (w(w.size() - 1) + 1.0);
    out.kernel_dim    = 0;
    for(Index i = 0; i < w.size(); ++i) {
        if(w(i) < out.kernel_tol) {
            ++out.kernel_dim;
        } else if(!out.gap) {
            out.gap = w(i);
        }
    }
    for(Index i = 0; i < std::min<Index>(10, w.size()); ++i) out.spectrum_head.push_back(w(i));
    return out;
}

double reflection_check(const ParentInteraction &hint) {
    return (mps::reverse_sites(hint.h, hint.d, hint.m) - hint.h).norm();
}

} // namespace sptz2::hamiltonian
