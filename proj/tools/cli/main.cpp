#include <cstdlib>
#include <iostream>

#include "app.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> config;
    if(const char *env = std::getenv("SPT_Z2_CONFIG"); env && *env) config = env;

    auto result = spt_z2::run(std::move(args), config);
    std::cout << result.output;
    if(!result.diagnostics.empty()) std::cerr << result.diagnostics << '\n';
    return result.exit_code;
}
