#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sptz2/common.hpp"
#include "sptz2/config.hpp"
#include "sptz2/mps.hpp"

/// Parent Hamiltonians h = 1 − supp(ω_m) and dense exact diagonalization of
/// the chains they generate.
namespace sptz2::hamiltonian {

struct ParentInteraction {
    Index d;
    Index m;
    ComplexMatrix h;                ///< d^m × d^m projector
    Index rank;                     ///< rank of h
    Index support_rank;             ///< d^m − rank
    double projector_residual;      ///< ‖h² − h‖_F
    std::optional<std::string> warning; ///< set when m is below injectivity length + 1
};

enum class Boundary { open, periodic };

struct ChainSpec {
    Index n;
    Boundary boundary = Boundary::open;
};

struct EdReport {
    double ground_energy;
    Index kernel_dim;
    std::optional<double> gap; ///< smallest eigenvalue above kernel_tol, if any
    std::vector<double> spectrum_head; ///< lowest (up to) 10 eigenvalues
    Index dimension;
    double kernel_tol;
};

/// `injectivity_length` feeds the range warning; it is computed when absent.
ParentInteraction parent_interaction(const mps::MpsTuple &v, Index m, const Config &cfg = {},
                                     std::optional<Index> injectivity_length = std::nullopt);

/// Σ_i h_{[i, i+m)} over i = 0..n−m (open) or every i mod n (periodic).
ComplexMatrix chain_hamiltonian(const ParentInteraction &hint, const ChainSpec &spec, const Config &cfg = {});

EdReport ed_report(const ComplexMatrix &h, const Config &cfg = {});

/// ‖reverse_m(h) − h‖_F
double reflection_check(const ParentInteraction &hint);

std::string to_string(Boundary b);

} // namespace sptz2::hamiltonian
