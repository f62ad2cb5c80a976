#include "app.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "canonical.hpp"
#include "json_io.hpp"
#include "report.hpp"
#include "sptz2/hamiltonian.hpp"
#include "sptz2/modular.hpp"
#include "sptz2/reflection.hpp"
#include "sptz2/scan.hpp"
#include "sptz2/zoo.hpp"

namespace spt_z2 {

namespace {

using sptz2::Config;

struct Options {
    std::string input;
    std::string model;
    std::string vector_path;
    std::string from_index;
    std::string family;
    std::string format = "json";
    std::string output;
    bool validate_only = false;
    unsigned jobs      = 1;
    long m             = 0;
    long n             = 0;
    std::string boundary = "open";

    Config flags;
    std::vector<std::pair<CLI::Option *, std::function<void(Config &)>>> overrides;
};

// Exposes every Config field as a flag; only flags given on the command line override.
void add_config_flags(CLI::App *cmd, Options &o) {
    auto tol = [&](const char *name, double sptz2::Tolerances::*field, const char *help) {
        auto *opt = cmd->add_option(std::string("--tol-") + name, o.flags.tol.*field, help)
                        ->check(CLI::PositiveNumber)
                        ->group("Tolerances");
        o.overrides.emplace_back(opt, [&o, field](Config &c) { c.tol.*field = o.flags.tol.*field; });
    };
    tol("lin", &sptz2::Tolerances::lin, "eigendecomposition and unitarity residuals");
    tol("herm", &sptz2::Tolerances::herm, "relative Hermiticity defect accepted on input");
    tol("rank", &sptz2::Tolerances::rank, "relative cutoff for supports");
    tol("norm", &sptz2::Tolerances::norm, "normalization residual accepted as normalized");
    tol("peripheral", &sptz2::Tolerances::peripheral, "peripheral spectrum window");
    tol("mixed", &sptz2::Tolerances::mixed, "mixed-transfer radius and unitary-multiple cutoff");
    tol("gauge", &sptz2::Tolerances::gauge, "gauge relation residual");
    tol("index", &sptz2::Tolerances::index, "U^T = ±U decision");
    tol("swap", &sptz2::Tolerances::swap, "M^T = ±M decision");
    tol("marginal", &sptz2::Tolerances::marginal, "reflected-marginal mismatch");
    tol("kernel", &sptz2::Tolerances::kernel, "ED kernel cutoff relative to max eigenvalue + 1");
    tol("modular", &sptz2::Tolerances::modular, "modular identity acceptance bound");

    auto count = [&](const char *name, auto Config::*field, const char *help) {
        auto *opt = cmd->add_option(name, o.flags.*field, help)->group("Limits");
        o.overrides.emplace_back(opt, [&o, field](Config &c) { c.*field = o.flags.*field; });
    };
    count("--l-max", &Config::l_max, "span search cutoff (0 means k^4)");
    count("--window-cap", &Config::window_cap, "largest d^l for marginals and blocking");
    count("--ed-cap", &Config::ed_cap, "largest dense ED dimension");
    count("--reflection-window", &Config::reflection_window, "marginal reversal depth (0 means 2x injectivity length)");
    count("--panel", &Config::panel, "random operators per modular check");
    count("--seed", &Config::seed, "seed for every randomized panel");

    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--output,-o", o.output, "write the report to a file");
}

void add_tuple_input(CLI::App *cmd, Options &o) {
    cmd->add_option("input", o.input, "tuple JSON file");
    cmd->add_option("--model", o.model, "zoo model, e.g. aklt or product:1,0");
    cmd->add_flag("--validate-only", o.validate_only, "parse the input, print it back and exit");
}

struct TupleInput {
    sptz2::mps::RawTuple raw;
    json canonical;
};

TupleInput load_tuple(const Options &o) {
    if(o.input.empty() == o.model.empty()) throw InputError("give exactly one of a tuple file and --model");
    TupleInput in;
    if(!o.model.empty()) {
        in.raw = sptz2::zoo::model(o.model);
    } else {
        in.raw = tuple_from_json(read_json_file(o.input));
    }
    in.canonical = tuple_to_json(in.raw);
    return in;
}

struct Outcome {
    json result = nullptr;
    json input  = nullptr; ///< canonical input, hashed into input_digest
    Status status = Status::ok;
    std::optional<json> error;
    std::optional<json> echo; ///< --validate-only output
};

json cmd_index(const Options &o, const Config &cfg, Outcome &out) {
    auto in   = load_tuple(o);
    out.input = in.canonical;
    if(o.validate_only) {
        out.echo = in.canonical;
        return nullptr;
    }
    double input_residual = sptz2::mps::normalization_residual(in.raw);
    auto report           = sptz2::reflection::z2_index(in.raw, cfg);
    return index_to_json(report, input_residual);
}

json cmd_check(const Options &o, const Config &cfg, Outcome &out) {
    auto in   = load_tuple(o);
    out.input = in.canonical;
    if(o.validate_only) {
        out.echo = in.canonical;
        return nullptr;
    }
    sptz2::mps::validate(in.raw);
    std::optional<sptz2::mps::MpsTuple> tuple;
    try {
        tuple = sptz2::mps::normalize(in.raw, cfg);
    } catch(const sptz2::Error &e) {
        if(e.code() != sptz2::ErrorCode::NotNormalizable) throw;
        return {{"primitivity", {{"is_primitive", false}, {"reason", e.what()}}}, {"reflection", nullptr}};
    }
    auto cert = sptz2::mps::primitivity(*tuple, cfg);
    json result{{"primitivity", certificate_to_json(cert)}, {"reflection", nullptr}};
    if(cert.is_primitive) {
        auto state            = sptz2::mps::invariant_state(*tuple, cfg);
        result["reflection"] = evidence_to_json(sptz2::reflection::reflection_invariant(*tuple, state, cert, cfg));
    }
    return result;
}

json cmd_modular(const Options &o, const Config &cfg, Outcome &out) {
    if(o.vector_path.empty() == o.from_index.empty()) throw InputError("give exactly one of --vector and --from-index");

    if(!o.vector_path.empty()) {
        auto m    = vector_from_json(read_json_file(o.vector_path));
        out.input = vector_to_json(m);
        if(o.validate_only) {
            out.echo = out.input;
            return nullptr;
        }
        auto omega = sptz2::modular::BipartiteVector::normalized(std::move(m));
        return modular_to_json(sptz2::modular::modular_data(omega, cfg));
    }

    // --from-index: an index report envelope, a tuple file, or a model string.
    std::optional<json> envelope;
    sptz2::mps::RawTuple raw;
    if(std::filesystem::is_regular_file(o.from_index)) {
        auto j = read_json_file(o.from_index);
        if(j.is_object() && j.contains("schema_version")) {
            envelope = j;
        } else {
            raw = tuple_from_json(j);
        }
    } else {
        raw = sptz2::zoo::model(o.from_index);
    }

    json result;
    if(envelope) {
        const auto &env = *envelope;
        if(env.value("command", "") != "index" || env.value("status", "") != "ok" || !env.contains("result"))
            throw InputError("--from-index envelope must be a successful index report");
        out.input = env["result"];
        if(o.validate_only) {
            out.echo = env;
            return nullptr;
        }
        try {
            const auto &r = env["result"];
            auto unitary  = matrix_from_json(r.at("gauge").at("unitary_eigenbasis"), "unitary_eigenbasis");
            auto rho      = r.at("rho_eigenvalues").get<std::vector<double>>();
            auto omega    = sptz2::modular::bond_vector(unitary, Eigen::Map<const sptz2::RealVector>(
                                                                     rho.data(), static_cast<sptz2::Index>(rho.size())));
            result        = modular_to_json(sptz2::modular::modular_data(omega, cfg));
            result["zeta"] = r.at("zeta");
            result["bond_vector"] = vector_to_json(omega.coefficients());
        } catch(const json::exception &e) {
            throw InputError(std::string("malformed index report: ") + e.what());
        }
    } else {
        out.input = tuple_to_json(raw);
        if(o.validate_only) {
            out.echo = out.input;
            return nullptr;
        }
        auto report    = sptz2::reflection::z2_index(raw, cfg);
        auto omega     = sptz2::modular::bond_vector(report);
        result         = modular_to_json(sptz2::modular::modular_data(omega, cfg));
        result["zeta"] = sptz2::to_int(report.zeta);
        result["bond_vector"] = vector_to_json(omega.coefficients());
    }
    return result;
}

json cmd_parent_ham(const Options &o, const Config &cfg, Outcome &out) {
    auto in   = load_tuple(o);
    out.input = in.canonical;
    if(o.validate_only) {
        out.echo = in.canonical;
        return nullptr;
    }
    auto tuple = sptz2::mps::normalize(in.raw, cfg);
    auto cert  = sptz2::mps::primitivity(tuple, cfg);
    if(!cert.is_primitive) sptz2::fail(sptz2::ErrorCode::NotPrimitive, "parent Hamiltonians need a primitive tuple");

    sptz2::Index m = o.m > 0 ? o.m : cert.injectivity_length.value_or(1) + 1;
    sptz2::Index n = o.n > 0 ? o.n : m;
    auto boundary  = o.boundary == "periodic" ? sptz2::hamiltonian::Boundary::periodic
                                              : sptz2::hamiltonian::Boundary::open;
    auto h = sptz2::hamiltonian::parent_interaction(tuple, m, cfg, cert.injectivity_length);
    auto chain = sptz2::hamiltonian::chain_hamiltonian(h, {n, boundary}, cfg);
    auto ed    = ed_to_json(sptz2::hamiltonian::ed_report(chain, cfg));
    ed["n"]        = n;
    ed["boundary"] = sptz2::hamiltonian::to_string(boundary);
    return {{"interaction", interaction_to_json(h, sptz2::hamiltonian::reflection_check(h))}, {"chain", std::move(ed)}};
}

json cmd_scan(const Options &o, const Config &cfg, Outcome &out) {
    if(o.input.empty() == o.family.empty()) throw InputError("give exactly one of a family file and --family");
    FamilyFile file;
    if(!o.family.empty()) {
        file.name   = o.family;
        file.family = o.family;
        try {
            sptz2::zoo::family(o.family);
        } catch(const sptz2::Error &e) {
            throw InputError(e.what());
        }
    } else {
        file = family_from_json(read_json_file(o.input));
    }
    out.input = family_to_json(file);
    if(o.validate_only) {
        out.echo = out.input;
        return nullptr;
    }
    return scan_to_json(sptz2::scan::scan(file.to_spec(), cfg, o.jobs));
}

json cmd_models(const Options &, const Config &, Outcome &out) {
    json models = json::array();
    for(const auto &info : sptz2::zoo::catalogue())
        models.push_back({{"name", info.name}, {"arguments", info.arguments}, {"description", info.description}});
    out.input = json::object();
    return {{"models", std::move(models)}, {"families", {"deformed-aklt", "aklt-breaker", "product"}}};
}

} // namespace

CommandResult run(std::vector<std::string> args, const std::optional<std::string> &config_path) {
    CLI::App app{"Reflection ℤ₂ index of translation-invariant matrix product states", "spt-z2"};
    app.require_subcommand(1);
    Options o;

    using Handler = std::function<json(const Options &, const Config &, Outcome &)>;
    std::vector<std::pair<CLI::App *, Handler>> commands;

    auto *index = app.add_subcommand("index", "compute the reflection index ζ");
    add_tuple_input(index, o);
    add_config_flags(index, o);
    commands.emplace_back(index, cmd_index);

    auto *check = app.add_subcommand("check", "primitivity and reflection-invariance certificates");
    add_tuple_input(check, o);
    add_config_flags(check, o);
    commands.emplace_back(check, cmd_check);

    auto *modular = app.add_subcommand("modular", "modular conjugation sign κ and swap sign σ of a bipartite vector");
    modular->add_option("--vector", o.vector_path, "bipartite vector JSON file");
    modular->add_option("--from-index", o.from_index, "index report, tuple file or model whose bond vector to use");
    modular->add_flag("--validate-only", o.validate_only, "parse the input, print it back and exit");
    add_config_flags(modular, o);
    commands.emplace_back(modular, cmd_modular);

    auto *parent = app.add_subcommand("parent-ham", "parent Hamiltonian and exact diagonalization");
    add_tuple_input(parent, o);
    parent->add_option("--m", o.m, "interaction range (default injectivity length + 1)")->check(CLI::PositiveNumber);
    parent->add_option("--n", o.n, "chain length (default m)")->check(CLI::PositiveNumber);
    parent->add_option("--boundary", o.boundary, "open or periodic")->check(CLI::IsMember({"open", "periodic"}));
    add_config_flags(parent, o);
    commands.emplace_back(parent, cmd_parent_ham);

    auto *scan = app.add_subcommand("scan", "index along a one-parameter family");
    scan->add_option("input", o.input, "family JSON file");
    scan->add_option("--family", o.family, "built-in family: deformed-aklt, aklt-breaker, product[:φ]");
    scan->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    scan->add_flag("--validate-only", o.validate_only, "parse the input, print it back and exit");
    add_config_flags(scan, o);
    commands.emplace_back(scan, cmd_scan);

    auto *models = app.add_subcommand("models", "list the model zoo");
    add_config_flags(models, o);
    commands.emplace_back(models, cmd_models);

    CommandResult result;
    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch(const CLI::CallForHelp &) {
        result.output = app.help();
        for(auto &[cmd, _] : commands)
            if(cmd->parsed()) result.output = cmd->help();
        return result;
    } catch(const CLI::CallForAllHelp &) {
        result.output = app.help("", CLI::AppFormatMode::All);
        return result;
    } catch(const CLI::ParseError &e) {
        result.exit_code   = exit_code(Status::input_error);
        result.diagnostics = std::string("spt-z2: ") + e.what();
        return result;
    }

    CLI::App *active = nullptr;
    Handler handler;
    for(auto &[cmd, h] : commands)
        if(cmd->parsed()) {
            active  = cmd;
            handler = h;
        }

    Config cfg;
    Outcome out;
    try {
        if(config_path) cfg = config_from_json(read_json_file(*config_path), cfg);
        for(auto &[opt, apply] : o.overrides)
            if(opt->count() > 0) apply(cfg);
        out.result = handler(o, cfg, out);
    } catch(const InputError &e) {
        out.status = Status::input_error;
        out.error  = json{{"code", "InputError"}, {"message", e.what()}};
    } catch(const sptz2::Error &e) {
        out.status = status_for(e.code());
        out.error  = json{{"code", std::string(sptz2::to_string(e.code()))}, {"message", e.what()}};
    } catch(const std::exception &e) {
        out.status = Status::numerical_failure;
        out.error  = json{{"code", "Internal"}, {"message", e.what()}};
    }

    if(out.echo && !out.error) {
        result.output = out.echo->dump(2) + "\n";
        return result;
    }

    json envelope{{"schema_version", "1"},
                  {"command", active->get_name()},
                  {"input_digest", digest(out.input)},
                  {"config", config_to_json(cfg)},
                  {"result", out.error ? json(nullptr) : std::move(out.result)},
                  {"status", std::string(status_name(out.status))}};
    if(out.error) {
        envelope["error"]  = *out.error;
        result.diagnostics = "spt-z2 " + active->get_name() + ": " + (*out.error)["message"].get<std::string>();
    }
    result.exit_code = exit_code(out.status);

    std::string text = o.format == "table" ? render_table(envelope) : envelope.dump(2) + "\n";
    if(o.output.empty()) {
        result.output = std::move(text);
    } else {
        std::ofstream file(o.output);
        if(!file || !(file << text)) {
            result.exit_code   = exit_code(Status::input_error);
            result.diagnostics = "spt-z2: cannot write " + o.output;
        }
    }
    return result;
}

} // namespace spt_z2
