#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sptz2/common.hpp"
#include "sptz2/config.hpp"
#include "sptz2/linalg.hpp"

/// Translation-invariant matrix product states generated by a d-tuple of k×k
/// matrices v = (v_1, …, v_d).
///
/// Window indices are d-ary numbers with the leftmost site most significant,
/// so a window operator on sites [0, l) matches kron(A_0, …, A_{l−1}).
namespace sptz2::mps {

/// Unvalidated d-tuple of k×k matrices, as read from a file or the model zoo.
using RawTuple = std::vector<ComplexMatrix>;

/// A d-tuple normalized so that Σ_μ v_μ v_μ† = 1.
class MpsTuple {
public:
    /// Validates shape and the normalization condition to `norm_tol`.
    static MpsTuple from_normalized(RawTuple matrices, double norm_tol = 1e-9);

    Index d() const noexcept { return static_cast<Index>(v_.size()); }
    Index k() const noexcept { return v_.front().rows(); }
    const ComplexMatrix &operator[](Index mu) const { return v_[static_cast<std::size_t>(mu)]; }
    std::span<const ComplexMatrix> matrices() const noexcept { return v_; }
    double normalization_residual() const noexcept { return residual_; }

    /// Physical sites per tuple index. Blocked tuples keep b > 1 so that
    /// reflection reverses the sites inside a block as well as the blocks.
    Index sites_per_symbol() const noexcept { return sites_; }
    Index site_dimension() const noexcept { return site_d_; }
    /// Same matrices, read as blocks of `sites` sites each; d must equal site_d^sites.
    MpsTuple with_sites(Index site_d, Index sites) const;

private:
    MpsTuple(RawTuple v, double residual)
        : v_(std::move(v)), residual_(residual), site_d_(static_cast<Index>(v_.size())) {}

    RawTuple v_;
    double residual_;
    Index site_d_;
    Index sites_ = 1;
};

struct PrimitivityCertificate {
    bool is_primitive;
    std::optional<Index> injectivity_length; ///< smallest l with dim K_l = k²
    Index span_dimension;                    ///< dim K_l at the last l examined
    Index l_max;
    Index peripheral_count;
    double spectral_gap;                     ///< 1 − second-largest modulus
    bool fixed_point_faithful;
};

struct InvariantState {
    ComplexMatrix rho;
    double residual;       ///< ‖Σ v_μ† ρ v_μ − ρ‖_F
    double min_eigenvalue;
};

struct Marginal {
    Index length;
    ComplexMatrix matrix;  ///< d^l × d^l density matrix
    ComplexMatrix support; ///< orthonormal basis of the range
    Index rank;
};

/// Checks shapes and finiteness: d ≥ 2, all matrices k×k with k ≥ 1.
void validate(std::span<const ComplexMatrix> v);

/// ‖Σ_μ v_μ v_μ† − 1‖_F
double normalization_residual(std::span<const ComplexMatrix> v);

/// x ↦ Σ v_μ x v_μ†
linalg::SuperOperator transfer_operator(std::span<const ComplexMatrix> v);
/// x ↦ Σ v_μ† x v_μ
linalg::SuperOperator adjoint_transfer_operator(std::span<const ComplexMatrix> v);
/// x ↦ Σ v_μ x w_μ†
linalg::SuperOperator mixed_transfer_operator(std::span<const ComplexMatrix> v, std::span<const ComplexMatrix> w);

/// Brings a raw tuple into Σ w w† = 1 form, generating the same state.
MpsTuple normalize(const RawTuple &raw, const Config &cfg = {});

/// Span certificate (dim K_l) cross-checked against the spectral certificate.
/// Throws PrimitivityDisagreement if the two disagree.
PrimitivityCertificate primitivity(const MpsTuple &v, const Config &cfg = {});

InvariantState invariant_state(const MpsTuple &v, const Config &cfg = {});

Marginal marginal(const MpsTuple &v, const InvariantState &state, Index l, const Config &cfg = {});

/// The d^b-tuple of b-fold products, same bond dimension.
MpsTuple block(const MpsTuple &v, Index b, const Config &cfg = {});

std::vector<Complex> transfer_spectrum(const MpsTuple &v);

/// Tuple index of the reversed site word: digits of `symbol` in base site_d, reversed.
Index reversed_symbol(Index symbol, Index site_d, Index sites);

/// Reverses the order of the l tensor factors of a d^l × d^l window operator.
ComplexMatrix reverse_sites(const ComplexMatrix &window, Index d, Index l);

/// d^l, or throws WindowTooLarge if it exceeds `cap`.
Index window_dimension(Index d, Index l, std::size_t cap);

} // namespace sptz2::mps
