#pragma once

#include <random>
#include <vector>

#include "sptz2/common.hpp"
#include "sptz2/mps.hpp"

// Random inputs and brute-force oracles shared by the test binaries.
namespace sptz2::testing {

using Rng = std::mt19937_64;

ComplexMatrix random_complex(Rng &rng, Index rows, Index cols);
ComplexMatrix random_hermitian(Rng &rng, Index k);
ComplexMatrix random_psd(Rng &rng, Index k, Index rank);
/// Haar-ish unitary from the QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(Rng &rng, Index k);
mps::RawTuple random_tuple(Rng &rng, Index d, Index k);

/// Raw reflection-invariant tuples: v_μ = S_μ with S_μ real symmetric (ζ = +1),
/// or v_μ = J S_μ with J = 1 ⊗ [[0,1],[−1,0]] (ζ = −1, k even).
mps::RawTuple random_reflection_invariant(Rng &rng, Index d, Index k, Sign zeta);

/// e^{iφ} W v_μ W†
mps::RawTuple conjugate(const mps::RawTuple &v, const ComplexMatrix &w, Complex phase);

/// kron(a_0, a_1, ...)
ComplexMatrix kron(const std::vector<ComplexMatrix> &factors);

/// Σ conj(v_μ) ⊗ v_μ, built with an explicit double loop.
ComplexMatrix transfer_matrix_oracle(const mps::RawTuple &v);

/// Eigenvalues of a dense matrix, sorted by modulus descending then real part.
std::vector<Complex> eigenvalues(const ComplexMatrix &m);

/// ω_l from Tr(ρ V_a V_b†) over all words a, b.
ComplexMatrix marginal_oracle(const mps::RawTuple &v, const ComplexMatrix &rho, Index l);

/// Fixed point of x ↦ Σ v† x v by power iteration from 1/k.
ComplexMatrix fixed_point_by_iteration(const mps::RawTuple &v, int steps = 4000);

/// Permutation operator for a site map: (P ψ)[sites permuted] on d^n.
ComplexMatrix site_permutation(Index d, Index n, const std::vector<Index> &image);

/// h on sites [i, i+m) of an n-site chain, by explicit Kronecker products.
ComplexMatrix embed_open(const ComplexMatrix &h, Index d, Index m, Index n, Index i);

} // namespace sptz2::testing
