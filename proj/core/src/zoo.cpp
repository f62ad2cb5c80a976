#include "sptz2/zoo.hpp"

#include <charconv>
#include <cmath>
#include <cctype>

#include "sptz2/error.hpp"

namespace sptz2::zoo {

namespace {

ComplexMatrix sigma_plus() { return (ComplexMatrix(2, 2) << 0, 1, 0, 0).finished(); }
ComplexMatrix sigma_minus() { return (ComplexMatrix(2, 2) << 0, 0, 1, 0).finished(); }
ComplexMatrix sigma_z() { return (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished(); }

double parse_real(std::string_view text) {
    if(text.empty() || text == "+") return 1.0;
    if(text == "-") return -1.0;
    if(text.front() == '+') text.remove_prefix(1);
    double value    = 0.0;
    auto [ptr, ec]  = std::from_chars(text.data(), text.data() + text.size(), value);
    if(ec != std::errc() || ptr != text.data() + text.size())
        fail(ErrorCode::UnknownModel, "cannot parse number '" + std::string(text) + "'");
    return value;
}

// Like parse_real, but a bare sign is not a number.
double parse_real_strict(std::string_view text) {
    if(text.empty() || text == "+" || text == "-")
        fail(ErrorCode::UnknownModel, "cannot parse number '" + std::string(text) + "'");
    return parse_real(text);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    while(true) {
        auto pos = text.find(sep);
        out.push_back(text.substr(0, pos));
        if(pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return out;
}

struct Parsed {
    std::string name;
    std::vector<Complex> args;
};

Parsed parse_model(std::string_view spec) {
    Parsed out;
    auto colon = spec.find(':');
    out.name   = std::string(spec.substr(0, colon));
    if(colon != std::string_view::npos)
        for(auto arg : split(spec.substr(colon + 1), ',')) out.args.push_back(parse_complex(arg));
    return out;
}

double real_argument(const Parsed &p, std::size_t count_expected) {
    if(p.args.size() != count_expected)
        fail(ErrorCode::UnknownModel, p.name + " takes exactly one real argument");
    if(p.args.front().imag() != 0.0) fail(ErrorCode::UnknownModel, p.name + " takes a real argument");
    return p.args.front().real();
}

} // namespace

mps::RawTuple aklt() {
    const double a = std::sqrt(2.0 / 3.0), b = 1.0 / std::sqrt(3.0);
    return {a * sigma_plus(), -b * sigma_z(), -a * sigma_minus()};
}

mps::RawTuple product(const std::vector<Complex> &phi) {
    if(phi.size() < 2) fail(ErrorCode::InvalidTuple, "product state needs d ≥ 2 amplitudes");
    double norm = 0.0;
    for(auto c : phi) norm += std::norm(c);
    norm = std::sqrt(norm);
    if(!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorCode::InvalidTuple, "product amplitudes must be finite and nonzero");
    mps::RawTuple out;
    for(auto c : phi) out.push_back(ComplexMatrix::Constant(1, 1, c / norm));
    return out;
}

mps::RawTuple ghz() {
    ComplexMatrix up = ComplexMatrix::Zero(2, 2), down = ComplexMatrix::Zero(2, 2);
    up(0, 0)   = 1.0;
    down(1, 1) = 1.0;
    return {up, down};
}

mps::RawTuple deformed_aklt(double s) {
    if(!(s > -1.0 && s < 2.0)) fail(ErrorCode::InvalidTuple, "deformed-aklt needs −1 < s < 2");
    const double a = std::sqrt((2.0 - s) / 3.0), b = std::sqrt((1.0 + s) / 3.0);
    return {a * sigma_plus(), b * sigma_z(), -a * sigma_minus()};
}

mps::RawTuple aklt_breaker(double s) {
    auto v = aklt();
    v[1] += s * ComplexMatrix::Identity(2, 2);
    auto normalized = mps::normalize(v);
    return {normalized.matrices().begin(), normalized.matrices().end()};
}

Complex parse_complex(std::string_view text) {
    while(!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while(!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if(text.empty()) fail(ErrorCode::UnknownModel, "empty complex literal");
    if(text.back() != 'i') return {parse_real_strict(text), 0.0};

    text.remove_suffix(1);
    // Split at the last sign that is not a leading sign or part of an exponent.
    std::size_t split = std::string_view::npos;
    for(std::size_t i = text.size(); i-- > 1;)
        if((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
            break;
        }
    if(split == std::string_view::npos) return {0.0, parse_real(text)};
    return {parse_real_strict(text.substr(0, split)), parse_real(text.substr(split))};
}

const std::vector<ModelInfo> &catalogue() {
    static const std::vector<ModelInfo> models{
        {"aklt", "", "spin-1 AKLT state, bond dimension 2"},
        {"product", "φ_1,...,φ_d", "product state with single-site vector φ (normalized)"},
        {"ghz", "", "GHZ tuple diag(1,0), diag(0,1); not primitive"},
        {"deformed-aklt", "s", "(ασ⁺, βσᶻ, −ασ⁻) with α = √((2−s)/3), β = √((1+s)/3)"},
        {"aklt-breaker", "s", "AKLT with s·1 added to v₀, renormalized"},
    };
    return models;
}

mps::RawTuple model(std::string_view spec) {
    auto p = parse_model(spec);
    if(p.name == "aklt" && p.args.empty()) return aklt();
    if(p.name == "ghz" && p.args.empty()) return ghz();
    if(p.name == "product") return product(p.args.empty() ? std::vector<Complex>{1.0, 0.0} : p.args);
    if(p.name == "deformed-aklt") return deformed_aklt(real_argument(p, 1));
    if(p.name == "aklt-breaker") return aklt_breaker(real_argument(p, 1));
    fail(ErrorCode::UnknownModel, "unknown model '" + std::string(spec) + "'");
}

scan::FamilySpec family(std::string_view spec) {
    auto p = parse_model(spec);
    if(p.name == "deformed-aklt" && p.args.empty()) return {"deformed-aklt", 0.0, 1.0, 11, deformed_aklt, std::nullopt};
    if(p.name == "aklt-breaker" && p.args.empty()) return {"aklt-breaker", 0.0, 0.5, 11, aklt_breaker, std::nullopt};
    if(p.name == "product") {
        auto phi = p.args.empty() ? std::vector<Complex>{1.0, 0.0} : p.args;
        product(phi);
        return {"product", 0.0, 1.0, 11, [phi](double) { return product(phi); }, std::nullopt};
    }
    fail(ErrorCode::UnknownModel, "unknown family '" + std::string(spec) + "'");
}

} // namespace sptz2::zoo
