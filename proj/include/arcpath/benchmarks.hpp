#pragma once

#include <span>
#include <string_view>

namespace arcpath {

// Built-in benchmark cases. The model text is embedded at build time from
// the files under models/, so `bench` runs need no paths.
struct BenchCase {
    std::string_view name;
    std::string_view group;
    std::string_view title;
    std::string_view model_text;
};

std::span<const BenchCase> benchmark_cases();

// nullptr when the name is unknown.
const BenchCase* find_benchmark(std::string_view name);

} // namespace arcpath
