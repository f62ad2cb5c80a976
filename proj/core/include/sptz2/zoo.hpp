#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sptz2/common.hpp"
#include "sptz2/mps.hpp"
#include "sptz2/scan.hpp"

/// Built-in tensors and families.
///
/// Model strings are `name` or `name:arg,arg,...`; arguments are real or
/// complex literals such as `0.5`, `-2i` or `0.707+0.707i`.
namespace sptz2::zoo {

/// (√(2/3)σ⁺, −σᶻ/√3, −√(2/3)σ⁻)
mps::RawTuple aklt();
/// k = 1, v_μ = φ_μ / ‖φ‖
mps::RawTuple product(const std::vector<Complex> &phi);
/// (diag(1,0), diag(0,1)); not primitive
mps::RawTuple ghz();
/// (α σ⁺, β σᶻ, −α σ⁻) with α = √((2−s)/3), β = √((1+s)/3)
mps::RawTuple deformed_aklt(double s);
/// AKLT with s·1 added to v₀, renormalized
mps::RawTuple aklt_breaker(double s);

Complex parse_complex(std::string_view text);

struct ModelInfo {
    std::string name;
    std::string arguments;
    std::string description;
};

const std::vector<ModelInfo> &catalogue();

/// Parses a model string; throws UnknownModel.
mps::RawTuple model(std::string_view spec);

/// `deformed-aklt`, `aklt-breaker` or `product[:φ]`; throws UnknownModel.
scan::FamilySpec family(std::string_view spec);

} // namespace sptz2::zoo
