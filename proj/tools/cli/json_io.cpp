#include "json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "sptz2/zoo.hpp"

namespace spt_z2 {

using sptz2::Complex;
using sptz2::ComplexMatrix;
using sptz2::Index;

namespace {

const json &field(const json &j, const char *key, const std::string &where) {
    if(!j.is_object()) throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if(it == j.end()) throw InputError(where + ": missing \"" + key + "\"");
    return *it;
}

Index positive_int(const json &j, const char *key, const std::string &where) {
    const auto &v = field(j, key, where);
    if(!v.is_number_integer() || v.get<long long>() < 1)
        throw InputError(where + ": \"" + key + "\" must be a positive integer");
    return v.get<Index>();
}

double finite_number(const json &j, const std::string &where) {
    if(!j.is_number()) throw InputError(where + ": expected a number");
    double x = j.get<double>();
    if(!std::isfinite(x)) throw InputError(where + ": number is not finite");
    return x;
}

void only_keys(const json &j, std::initializer_list<const char *> allowed, const std::string &where) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for(const auto &[key, _] : j.items())
        if(!ok.count(key)) throw InputError(where + ": unexpected key \"" + key + "\"");
}

} // namespace

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if(!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch(const json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

ComplexMatrix matrix_from_json(const json &j, const std::string &where) {
    if(!j.is_array() || j.empty()) throw InputError(where + ": expected a non-empty array of rows");
    const auto rows = static_cast<Index>(j.size());
    if(!j[0].is_array() || j[0].empty()) throw InputError(where + ": rows must be non-empty arrays");
    const auto cols = static_cast<Index>(j[0].size());
    ComplexMatrix out(rows, cols);
    for(Index r = 0; r < rows; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if(!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw InputError(where + ": row " + std::to_string(r) + " has the wrong length");
        for(Index c = 0; c < cols; ++c) {
            const auto &entry = row[static_cast<std::size_t>(c)];
            std::string at    = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            if(!entry.is_array() || entry.size() != 2) throw InputError(at + ": expected [re, im]");
            out(r, c) = Complex(finite_number(entry[0], at), finite_number(entry[1], at));
        }
    }
    return out;
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for(Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for(Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

sptz2::mps::RawTuple tuple_from_json(const json &j) {
    const std::string where = "tuple";
    only_keys(j, {"d", "k", "matrices"}, where);
    const Index d     = positive_int(j, "d", where);
    const Index k     = positive_int(j, "k", where);
    const auto &mats  = field(j, "matrices", where);
    if(!mats.is_array() || static_cast<Index>(mats.size()) != d)
        throw InputError(where + ": \"matrices\" must hold d = " + std::to_string(d) + " entries");
    sptz2::mps::RawTuple out;
    for(Index mu = 0; mu < d; ++mu) {
        std::string at = "matrices[" + std::to_string(mu) + "]";
        auto m         = matrix_from_json(mats[static_cast<std::size_t>(mu)], at);
        if(m.rows() != k || m.cols() != k) throw InputError(at + ": expected a " + std::to_string(k) + "×" +
                                                            std::to_string(k) + " matrix");
        out.push_back(std::move(m));
    }
    return out;
}

json tuple_to_json(const sptz2::mps::RawTuple &v) {
    json mats = json::array();
    for(const auto &m : v) mats.push_back(matrix_to_json(m));
    return {{"d", v.size()}, {"k", v.empty() ? 0 : v.front().rows()}, {"matrices", std::move(mats)}};
}

ComplexMatrix vector_from_json(const json &j) {
    const std::string where = "vector";
    only_keys(j, {"m", "entries"}, where);
    const Index m = positive_int(j, "m", where);
    auto out      = matrix_from_json(field(j, "entries", where), "entries");
    if(out.rows() != m || out.cols() != m)
        throw InputError(where + ": \"entries\" must be " + std::to_string(m) + "×" + std::to_string(m));
    return out;
}

json vector_to_json(const ComplexMatrix &m) { return {{"m", m.rows()}, {"entries", matrix_to_json(m)}}; }

FamilyFile family_from_json(const json &j) {
    const std::string where = "family";
    only_keys(j, {"name", "family", "range", "grid", "table"}, where);
    FamilyFile out;
    const auto &name = field(j, "name", where);
    if(!name.is_string()) throw InputError(where + ": \"name\" must be a string");
    out.name = name.get<std::string>();

    bool has_family = j.contains("family"), has_table = j.contains("table");
    if(has_family == has_table) throw InputError(where + ": exactly one of \"family\" and \"table\" is required");

    if(has_family) {
        if(!j["family"].is_string()) throw InputError(where + ": \"family\" must be a string");
        out.family = j["family"].get<std::string>();
        if(j.contains("range")) {
            const auto &r = j["range"];
            if(!r.is_array() || r.size() != 2) throw InputError(where + ": \"range\" must be [s_begin, s_end]");
            out.range = {finite_number(r[0], "range[0]"), finite_number(r[1], "range[1]")};
        }
        if(j.contains("grid")) out.grid = static_cast<std::size_t>(positive_int(j, "grid", where));
        try {
            sptz2::zoo::family(*out.family);
        } catch(const sptz2::Error &e) {
            throw InputError(e.what());
        }
        return out;
    }

    if(j.contains("range") || j.contains("grid")) throw InputError(where + ": a table takes no \"range\" or \"grid\"");
    const auto &table = j["table"];
    if(!table.is_array() || table.empty()) throw InputError(where + ": \"table\" must be a non-empty array");
    for(std::size_t i = 0; i < table.size(); ++i) {
        std::string at = "table[" + std::to_string(i) + "]";
        only_keys(table[i], {"s", "tuple"}, at);
        double s = finite_number(field(table[i], "s", at), at + ".s");
        out.table.emplace_back(s, tuple_from_json(field(table[i], "tuple", at)));
    }
    return out;
}

json family_to_json(const FamilyFile &f) {
    json out{{"name", f.name}};
    if(f.family) {
        out["family"] = *f.family;
        if(f.range) out["range"] = json::array({f.range->first, f.range->second});
        if(f.grid) out["grid"] = *f.grid;
        return out;
    }
    json table = json::array();
    for(const auto &[s, tuple] : f.table) table.push_back({{"s", s}, {"tuple", tuple_to_json(tuple)}});
    out["table"] = std::move(table);
    return out;
}

sptz2::scan::FamilySpec FamilyFile::to_spec() const {
    if(family) {
        auto spec = sptz2::zoo::family(*family);
        spec.name = name;
        if(range) std::tie(spec.s_begin, spec.s_end) = *range;
        if(grid) spec.grid = *grid;
        return spec;
    }
    sptz2::scan::FamilySpec spec;
    spec.name = name;
    std::vector<double> samples;
    for(const auto &row : table) samples.push_back(row.first);
    spec.s_begin   = samples.front();
    spec.s_end     = samples.back();
    spec.grid      = samples.size();
    auto rows      = table;
    spec.generator = [rows](double s) {
        for(const auto &[t, tuple] : rows)
            if(t == s) return tuple;
        sptz2::fail(sptz2::ErrorCode::InvalidSpec, "no table row for s = " + std::to_string(s));
    };
    spec.samples = std::move(samples);
    return spec;
}

json config_to_json(const sptz2::Config &cfg) {
    const auto &t = cfg.tol;
    return {{"tolerances",
             {{"lin", t.lin},
              {"herm", t.herm},
              {"rank", t.rank},
              {"norm", t.norm},
              {"peripheral", t.peripheral},
              {"mixed", t.mixed},
              {"gauge", t.gauge},
              {"index", t.index},
              {"swap", t.swap},
              {"marginal", t.marginal},
              {"kernel", t.kernel},
              {"modular", t.modular}}},
            {"l_max", cfg.l_max},
            {"window_cap", cfg.window_cap},
            {"ed_cap", cfg.ed_cap},
            {"reflection_window", cfg.reflection_window},
            {"panel", cfg.panel},
            {"seed", cfg.seed}};
}

sptz2::Config config_from_json(const json &j, sptz2::Config cfg) {
    const std::string where = "config";
    if(!j.is_object()) throw InputError(where + ": expected an object");
    only_keys(j, {"tolerances", "l_max", "window_cap", "ed_cap", "reflection_window", "panel", "seed"}, where);

    auto count = [&](const char *key, auto &target) {
        if(!j.contains(key)) return;
        const auto &v = j[key];
        if(!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw InputError(where + ": \"" + key + "\" must be a non-negative integer");
        target = v.get<std::remove_reference_t<decltype(target)>>();
    };
    count("l_max", cfg.l_max);
    count("window_cap", cfg.window_cap);
    count("ed_cap", cfg.ed_cap);
    count("reflection_window", cfg.reflection_window);
    count("panel", cfg.panel);
    count("seed", cfg.seed);

    if(j.contains("tolerances")) {
        const auto &t = j["tolerances"];
        if(!t.is_object()) throw InputError(where + ": \"tolerances\" must be an object");
        auto &tol = cfg.tol;
        std::pair<const char *, double *> slots[] = {
            {"lin", &tol.lin},         {"herm", &tol.herm},       {"rank", &tol.rank},
            {"norm", &tol.norm},       {"peripheral", &tol.peripheral}, {"mixed", &tol.mixed},
            {"gauge", &tol.gauge},     {"index", &tol.index},     {"swap", &tol.swap},
            {"marginal", &tol.marginal}, {"kernel", &tol.kernel}, {"modular", &tol.modular}};
        std::set<std::string> known;
        for(auto &[key, slot] : slots) {
            known.insert(key);
            if(!t.contains(key)) continue;
            double x = finite_number(t[key], std::string("tolerances.") + key);
            if(!(x > 0.0)) throw InputError(std::string("tolerances.") + key + " must be positive");
            *slot = x;
        }
        for(const auto &[key, _] : t.items())
            if(!known.count(key)) throw InputError("tolerances: unknown key \"" + key + "\"");
    }
    return cfg;
}

} // namespace spt_z2
