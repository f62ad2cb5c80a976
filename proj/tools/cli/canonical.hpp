#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace spt_z2 {

/// Compact JSON with sorted keys and every float printed as %.17g.
std::string canonical_dump(const nlohmann::json &j);

std::string sha256_hex(std::string_view bytes);

inline std::string digest(const nlohmann::json &j) { return sha256_hex(canonical_dump(j)); }

} // namespace spt_z2
