#include "arcpath/benchmarks.hpp"

#include "arcpath_embedded_models.hpp"

#include <array>

namespace arcpath {

namespace {

constexpr std::array<BenchCase, 9> kCases = {{
    {"planartruss3_e10", "planartruss3", "3-member planar truss, E1 = 10",
     embedded::planartruss3_e10},
    {"planartruss3_e2", "planartruss3", "3-member planar truss, E1 = 2",
     embedded::planartruss3_e2},
    {"planartruss3_e0p75", "planartruss3", "3-member planar truss, E1 = 0.75",
     embedded::planartruss3_e0p75},
    {"planartruss3_e0p5", "planartruss3", "3-member planar truss, E1 = 0.5",
     embedded::planartruss3_e0p5},
    {"spacetruss12", "spacetruss12", "12-member space truss", embedded::spacetruss12},
    {"leeframe", "leeframe", "Lee frame", embedded::leeframe},
    {"arch215", "arch215", "hinged-clamped 215 degree arch", embedded::arch215},
    {"semicircarch_sym", "semicircarch", "semi-circular arch, crown load",
     embedded::semicircarch_sym},
    {"semicircarch_asym", "semicircarch", "semi-circular arch, offset load",
     embedded::semicircarch_asym},
}};

} // namespace

std::span<const BenchCase> benchmark_cases() {
    return kCases;
}

const BenchCase* find_benchmark(std::string_view name) {
    for (const auto& c : kCases) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

} // namespace arcpath
