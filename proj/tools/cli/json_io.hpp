#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sptz2/config.hpp"
#include "sptz2/mps.hpp"
#include "sptz2/scan.hpp"

namespace spt_z2 {

using nlohmann::json;

/// Unreadable or malformed input. Maps to status input_error.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string &path);

/// {"d", "k", "matrices": d × k × k × [re, im]}
sptz2::mps::RawTuple tuple_from_json(const json &j);
json tuple_to_json(const sptz2::mps::RawTuple &v);

/// {"m", "entries": m × m × [re, im]}, entries[j][l] the coefficient of e_j ⊗ e_l
sptz2::ComplexMatrix vector_from_json(const json &j);
json vector_to_json(const sptz2::ComplexMatrix &m);

sptz2::ComplexMatrix matrix_from_json(const json &j, const std::string &where);
json matrix_to_json(const sptz2::ComplexMatrix &m);
json complex_to_json(sptz2::Complex z);

/// Either a zoo family with optional range/grid, or a table of (s, tuple).
struct FamilyFile {
    std::string name;
    std::optional<std::string> family;
    std::optional<std::pair<double, double>> range;
    std::optional<std::size_t> grid;
    std::vector<std::pair<double, sptz2::mps::RawTuple>> table;

    sptz2::scan::FamilySpec to_spec() const;
};

FamilyFile family_from_json(const json &j);
json family_to_json(const FamilyFile &f);

json config_to_json(const sptz2::Config &cfg);
/// Overrides the fields present in `j`; unknown keys are rejected.
sptz2::Config config_from_json(const json &j, sptz2::Config base = {});

} // namespace spt_z2
