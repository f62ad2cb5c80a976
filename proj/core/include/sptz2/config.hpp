#pragma once

#include <cstddef>
#include <cstdint>

namespace sptz2 {

/// Numerical tolerances shared across the pipeline. Every field is surfaced
/// by the command-line tool and embedded in emitted reports.
struct Tolerances {
    double lin        = 1e-10; ///< eigendecomposition / unitarity residuals
    double herm       = 1e-8;  ///< relative Hermiticity defect accepted on input
    double rank       = 1e-12; ///< relative cutoff for supports and pseudo-powers
    double norm       = 1e-9;  ///< ‖Σ v v† − 1‖_F accepted for a normalized tuple
    double peripheral = 1e-6;  ///< |λ| ≥ radius − peripheral counts as peripheral
    double mixed      = 1e-6;  ///< mixed-transfer radius and unitary-multiple cutoff
    double gauge      = 1e-7;  ///< max_μ ‖U v_μ − e^{it} w_μ U‖_F
    double index      = 1e-7;  ///< symmetric/antisymmetric decision for Uᵀ = ±U
    double swap       = 1e-8;  ///< Mᵀ = ±M decision for bond vectors
    double marginal   = 1e-8;  ///< reflected-marginal mismatch accepted as invariant
    double kernel     = 1e-8;  ///< ED kernel cutoff, relative to (max eigenvalue + 1)
    double modular    = 1e-8;  ///< acceptance bound for modular identity residuals
};

struct Config {
    Tolerances tol;
    std::size_t l_max             = 0;    ///< span search cutoff; 0 means k⁴
    std::size_t window_cap        = 4096; ///< largest d^l for marginals and blocking
    std::size_t ed_cap            = 4096; ///< largest dense ED dimension
    std::size_t reflection_window = 0;    ///< marginal reversal depth; 0 means 2·injectivity length
    std::size_t panel             = 8;    ///< random operators per modular identity check
    std::uint64_t seed            = 1;    ///< seeds every randomized panel
};

} // namespace sptz2
