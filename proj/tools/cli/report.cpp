#include "report.hpp"

#include <cstdio>
#include <sstream>

#include "json_io.hpp"

namespace spt_z2 {

using sptz2::ErrorCode;

std::string_view status_name(Status s) noexcept {
    switch(s) {
        case Status::ok: return "ok";
        case Status::input_error: return "input_error";
        case Status::not_primitive: return "not_primitive";
        case Status::not_reflection_invariant: return "not_reflection_invariant";
        case Status::ambiguous_symmetry: return "ambiguous_symmetry";
        case Status::degenerate_support: return "degenerate_support";
        case Status::numerical_failure: return "numerical_failure";
        case Status::limit_exceeded: return "limit_exceeded";
    }
    return "numerical_failure";
}

Status status_for(ErrorCode code) noexcept {
    switch(code) {
        case ErrorCode::NotPrimitive:
        case ErrorCode::NotNormalizable:
        case ErrorCode::NotFaithful: return Status::not_primitive;
        case ErrorCode::NotReflectionInvariant: return Status::not_reflection_invariant;
        case ErrorCode::AmbiguousSymmetry: return Status::ambiguous_symmetry;
        case ErrorCode::DegenerateSupport:
        case ErrorCode::ZeroVector: return Status::degenerate_support;
        case ErrorCode::WindowTooLarge:
        case ErrorCode::DimensionCap: return Status::limit_exceeded;
        case ErrorCode::InvalidTuple:
        case ErrorCode::NotSquare:
        case ErrorCode::NotUnitVector:
        case ErrorCode::InvalidChain:
        case ErrorCode::UnknownModel:
        case ErrorCode::InvalidSpec: return Status::input_error;
        default: return Status::numerical_failure;
    }
}

json sign_to_json(const std::optional<sptz2::Sign> &s) { return s ? json(sptz2::to_int(*s)) : json(nullptr); }

json certificate_to_json(const sptz2::mps::PrimitivityCertificate &c) {
    return {{"is_primitive", c.is_primitive},
            {"injectivity_length", c.injectivity_length ? json(*c.injectivity_length) : json(nullptr)},
            {"span_dimension", c.span_dimension},
            {"l_max", c.l_max},
            {"peripheral_count", c.peripheral_count},
            {"spectral_gap", c.spectral_gap},
            {"fixed_point_faithful", c.fixed_point_faithful}};
}

json evidence_to_json(const sptz2::reflection::ReflectionEvidence &e) {
    return {{"invariant", e.invariant},
            {"via_gauge", e.via_gauge},
            {"gauge_residual", e.gauge_residual},
            {"gauge_failure", e.gauge_failure.empty() ? json(nullptr) : json(e.gauge_failure)},
            {"via_marginals", e.via_marginals},
            {"marginal_residual", e.marginal_residual},
            {"window", e.window}};
}

json index_to_json(const sptz2::reflection::IndexReport &r, double input_normalization_residual) {
    json spectrum = json::array();
    for(auto z : sptz2::mps::transfer_spectrum(r.tuple)) spectrum.push_back(complex_to_json(z));
    json rho = json::array();
    for(auto x : r.reflected.rho_diag) rho.push_back(x);
    return {{"zeta", sptz2::to_int(r.zeta)},
            {"d", r.tuple.d()},
            {"k", r.tuple.k()},
            {"input_normalization_residual", input_normalization_residual},
            {"primitivity", certificate_to_json(r.primitivity)},
            {"reflection", evidence_to_json(r.reflection)},
            {"gauge",
             {{"phase", complex_to_json(r.gauge.phase)},
              {"relation_residual", r.gauge.relation_residual},
              {"unitary_multiple_deviation", r.gauge.unitary_multiple_deviation},
              {"mixed_radius", r.gauge.mixed_radius},
              {"unitary_eigenbasis", matrix_to_json(r.unitary_eigenbasis)}}},
            {"rho_eigenvalues", std::move(rho)},
            {"invariant_state_residual", r.state.residual},
            {"transfer_spectrum", std::move(spectrum)},
            {"residuals",
             {{"sym", r.sym_residual},
              {"antisym", r.antisym_residual},
              {"phase_sq", r.phase_sq_residual},
              {"rho_commute", r.rho_commute_residual},
              {"theta_sq", r.theta_sq_residual}}}};
}

json modular_to_json(const sptz2::modular::ModularReport &r) {
    const auto &res = r.residuals;
    json lambda     = json::array();
    for(auto x : r.lambda) lambda.push_back(x);
    return {{"kappa", sign_to_json(r.kappa)},
            {"sigma", sign_to_json(r.sigma)},
            {"support_dim", r.support_dim},
            {"lambda", std::move(lambda)},
            {"residuals",
             {{"s_action", res.s_action},
              {"j_square", res.j_square},
              {"delta_fix", res.delta_fix},
              {"j_fix", res.j_fix},
              {"delta_formula", res.delta_formula},
              {"j_formula", res.j_formula},
              {"theta_square", res.theta_square},
              {"u_relation", res.u_relation ? json(*res.u_relation) : json(nullptr)}}}};
}

json interaction_to_json(const sptz2::hamiltonian::ParentInteraction &h, double reflection_residual) {
    return {{"m", h.m},
            {"d", h.d},
            {"rank", h.rank},
            {"support_rank", h.support_rank},
            {"projector_residual", h.projector_residual},
            {"reflection_residual", reflection_residual},
            {"warning", h.warning ? json(*h.warning) : json(nullptr)}};
}

json ed_to_json(const sptz2::hamiltonian::EdReport &e) {
    return {{"ground_energy", e.ground_energy},
            {"kernel_dim", e.kernel_dim},
            {"gap", e.gap ? json(*e.gap) : json(nullptr)},
            {"spectrum_head", e.spectrum_head},
            {"dimension", e.dimension},
            {"kernel_tol", e.kernel_tol}};
}

json scan_to_json(const sptz2::scan::ScanReport &r) {
    json points = json::array();
    for(const auto &p : r.points)
        points.push_back({{"s", p.s},
                          {"primitive", p.primitive},
                          {"reflection_invariant", p.reflection_invariant},
                          {"zeta", sign_to_json(p.zeta)},
                          {"transfer_gap", p.transfer_gap ? json(*p.transfer_gap) : json(nullptr)},
                          {"error", p.error ? json(std::string(sptz2::to_string(*p.error))) : json(nullptr)}});
    return {{"name", r.name},
            {"points", std::move(points)},
            {"summary",
             {{"constant_index", r.constant_index},
              {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)}}}};
}

namespace {

std::string scalar(const json &j) {
    if(j.is_string()) return j.get<std::string>();
    if(j.is_null()) return "-";
    if(j.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", j.get<double>());
        return buf;
    }
    return j.dump();
}

void flatten(const json &j, const std::string &prefix, std::ostringstream &out) {
    if(j.is_object()) {
        for(const auto &[key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if(j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        out << prefix << " = " << j.dump() << '\n';
    } else if(j.is_array()) {
        out << prefix << " =";
        for(const auto &x : j) out << ' ' << scalar(x);
        out << '\n';
    } else {
        out << prefix << " = " << scalar(j) << '\n';
    }
}

} // namespace

std::string render_table(const json &envelope) {
    std::ostringstream out;
    out << "command: " << envelope.value("command", "") << "\nstatus:  " << envelope.value("status", "") << '\n';
    if(envelope.contains("error")) out << "error:   " << envelope["error"].value("message", "") << '\n';
    const auto &result = envelope["result"];
    if(result.is_null()) return out.str();

    if(envelope["command"] == "scan") {
        char line[160];
        std::snprintf(line, sizeof line, "%12s  %9s  %10s  %5s  %12s  %s\n", "s", "primitive", "reflection", "zeta",
                      "transfer_gap", "error");
        out << "family: " << result["name"].get<std::string>() << '\n' << line;
        for(const auto &p : result["points"]) {
            std::snprintf(line, sizeof line, "%12.6g  %9s  %10s  %5s  %12s  %s\n", p["s"].get<double>(),
                          p["primitive"].get<bool>() ? "yes" : "no",
                          p["reflection_invariant"].get<bool>() ? "yes" : "no", scalar(p["zeta"]).c_str(),
                          scalar(p["transfer_gap"]).c_str(), scalar(p["error"]).c_str());
            out << line;
        }
        out << "constant_index: " << (result["summary"]["constant_index"].get<bool>() ? "true" : "false")
            << "\nfirst_failure:  " << scalar(result["summary"]["first_failure"]) << '\n';
        return out.str();
    }
    flatten(result, "", out);
    return out.str();
}

} // namespace spt_z2
