#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sptz2/error.hpp"
#include "sptz2/hamiltonian.hpp"
#include "sptz2/modular.hpp"
#include "sptz2/reflection.hpp"
#include "sptz2/scan.hpp"

namespace spt_z2 {

using nlohmann::json;

/// Public exit-code contract; one status string per code.
enum class Status : int {
    ok                       = 0,
    input_error              = 1,
    not_primitive            = 2,
    not_reflection_invariant = 3,
    ambiguous_symmetry       = 4,
    degenerate_support       = 5,
    numerical_failure        = 6,
    limit_exceeded           = 7,
};

std::string_view status_name(Status s) noexcept;
constexpr int exit_code(Status s) noexcept { return static_cast<int>(s); }
Status status_for(sptz2::ErrorCode code) noexcept;

json sign_to_json(const std::optional<sptz2::Sign> &s);
json certificate_to_json(const sptz2::mps::PrimitivityCertificate &c);
json evidence_to_json(const sptz2::reflection::ReflectionEvidence &e);
json index_to_json(const sptz2::reflection::IndexReport &r, double input_normalization_residual);
json modular_to_json(const sptz2::modular::ModularReport &r);
json interaction_to_json(const sptz2::hamiltonian::ParentInteraction &h, double reflection_residual);
json ed_to_json(const sptz2::hamiltonian::EdReport &e);
json scan_to_json(const sptz2::scan::ScanReport &r);

/// Plain-text rendering of a report envelope.
std::string render_table(const json &envelope);

} // namespace spt_z2
