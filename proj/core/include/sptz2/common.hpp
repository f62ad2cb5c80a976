#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace sptz2 {

using Complex       = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector    = Eigen::VectorXd;
using Index         = Eigen::Index;

/// A ℤ₂ value. Used for the reflection index, the swap sign and the
/// modular-conjugation sign, which all take values in {-1, +1}.
enum class Sign : int { minus = -1, plus = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign sign_of(bool positive) noexcept { return positive ? Sign::plus : Sign::minus; }

} // namespace sptz2
