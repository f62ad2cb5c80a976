#include "canonical.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <openssl/evp.h>

namespace spt_z2 {

namespace {

void write(const nlohmann::json &j, std::string &out) {
    using value_t = nlohmann::json::value_t;
    switch(j.type()) {
        case value_t::object: {
            // nlohmann::json keeps object keys ordered.
            out += '{';
            bool first = true;
            for(const auto &[key, value] : j.items()) {
                if(!first) out += ',';
                first = false;
                out += nlohmann::json(key).dump();
                out += ':';
                write(value, out);
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            for(std::size_t i = 0; i < j.size(); ++i) {
                if(i) out += ',';
                write(j[i], out);
            }
            out += ']';
            break;
        }
        case value_t::number_float: {
            double x = j.get<double>();
            if(!std::isfinite(x)) throw std::invalid_argument("canonical JSON cannot hold non-finite numbers");
            if(x == 0.0) x = 0.0; // folds −0
            std::array<char, 32> buf{};
            std::snprintf(buf.data(), buf.size(), "%.17g", x);
            out += buf.data();
            break;
        }
        default: out += j.dump(); break;
    }
}

} // namespace

std::string canonical_dump(const nlohmann::json &j) {
    std::string out;
    write(j, out);
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if(EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for(unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

} // namespace spt_z2
