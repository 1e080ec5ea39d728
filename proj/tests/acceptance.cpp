// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Built as a standalone binary so `ctest -R acceptance`
// gives the full report.

#include "arcpath/arclength.hpp"
#include "arcpath/benchmarks.hpp"
#include "arcpath/elem_beam2d.hpp"
#include "arcpath/elem_truss.hpp"
#include "arcpath/io.hpp"
#include "arcpath/model.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace {

int g_failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                label.c_str(), detail.c_str());
    if (!pass) {
        ++g_failures;
    }
}

} // namespace

int main() {
    std::printf("acceptance suite placeholder\n");
    (void)report;
    return g_failures == 0 ? 0 : 1;
}
