#include "arcpath/benchmarks.hpp"
#include "arcpath/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void print_report(std::ostream& out, const std::string& label,
                  const arcpath::EquilibriumPath& path, double wall_seconds) {
    out << "model:            " << label << "\n";
    out << "status:           "
        << (path.status == arcpath::RunStatus::Completed ? "completed" : "stalled at ds_min")
        << "\n";
    out << "steps:            " << path.records.size() << "\n";
    out << "total iterations: " << path.total_iterations << "\n";
    char avg[32];
    std::snprintf(avg, sizeof(avg), "%.2f", path.average_iterations());
    out << "avg iterations:   " << avg << "\n";
    out << "restarts:         " << path.restarts << "\n";
    char ds[32];
    std::snprintf(ds, sizeof(ds), "%.6g", path.ds_first);
    out << "first-step ds:    " << ds << "\n";
    char wt[32];
    std::snprintf(wt, sizeof(wt), "%.3f", wall_seconds);
    out << "wall time:        " << wt << " s\n";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << content;
}

void write_shapes(const arcpath::Model& model, const arcpath::EquilibriumPath& path,
                  const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& rec : path.records) {
        char name[32];
        std::snprintf(name, sizeof(name), "shape_%04d.csv", rec.step);
        write_file(dir / name, arcpath::deformed_shape_csv(model, rec.u));
    }
}

int cmd_run(const std::string& model_path, const std::optional<std::string>& out_path,
            const std::optional<std::string>& shapes_dir, std::optional<int> steps,
            std::optional<double> dlambda, std::optional<double> psi) {
    arcpath::ParsedModel pm;
    try {
        pm = arcpath::load_model_file(model_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (steps) {
        pm.config.n_max = *steps;
    }
    if (dlambda) {
        pm.config.dlambda_init = *dlambda;
    }
    if (psi) {
        pm.config.psi = *psi;
    }

    const auto t0 = Clock::now();
    arcpath::EquilibriumPath path;
    try {
        path = arcpath::run(pm.model, pm.config);
    } catch (const arcpath::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const double wall = seconds_since(t0);

    try {
        if (out_path) {
            write_file(*out_path, arcpath::path_csv(path, pm.model));
        }
        if (shapes_dir) {
            write_shapes(pm.model, path, *shapes_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    print_report(std::cout, model_path, path, wall);
    return path.status == arcpath::RunStatus::Completed ? kExitOk : kExitSolver;
}

struct BenchOutcome {
    const arcpath::BenchCase* bench = nullptr;
    arcpath::EquilibriumPath path;
    std::string csv;
    std::string error;
    double wall_seconds = 0.0;
};

BenchOutcome run_case(const arcpath::BenchCase& bench) {
    BenchOutcome out;
    out.bench = &bench;
    try {
        const auto t0 = Clock::now();
        arcpath::ParsedModel pm = arcpath::parse_model(bench.model_text);
        out.path = arcpath::run(pm.model, pm.config);
        out.wall_seconds = seconds_since(t0);
        out.csv = arcpath::path_csv(out.path, pm.model);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

int cmd_bench(const std::string& case_name, const std::string& out_dir) {
    std::vector<const arcpath::BenchCase*> selected;
    if (case_name == "all") {
        for (const auto& c : arcpath::benchmark_cases()) {
            selected.push_back(&c);
        }
    } else if (const auto* c = arcpath::find_benchmark(case_name)) {
        selected.push_back(c);
    } else {
        std::cerr << "error: unknown benchmark case '" << case_name << "'\n";
        std::cerr << "available cases:";
        for (const auto& c : arcpath::benchmark_cases()) {
            std::cerr << " " << c.name;
        }
        std::cerr << " all\n";
        return kExitUsage;
    }

    // Cases run on worker threads; the report keeps the table order fixed.
    std::vector<std::future<BenchOutcome>> futures;
    futures.reserve(selected.size());
    for (const auto* c : selected) {
        futures.push_back(std::async(std::launch::async, run_case, std::cref(*c)));
    }

    fs::create_directories(out_dir);
    std::printf("%-22s %6s %10s %8s %9s %12s  %s\n", "case", "steps", "total_its",
                "avg_its", "restarts", "first_ds", "status");
    int exit_code = kExitOk;
    for (auto& f : futures) {
        const BenchOutcome out = f.get();
        if (!out.error.empty()) {
            std::printf("%-22s %s\n", out.bench->name.data(), ("error: " + out.error).c_str());
            exit_code = kExitSolver;
            continue;
        }
        write_file(fs::path(out_dir) / (std::string(out.bench->name) + ".csv"), out.csv);
        std::printf("%-22s %6zu %10lld %8.2f %9d %12.6g  %s\n", out.bench->name.data(),
                    out.path.records.size(), out.path.total_iterations,
                    out.path.average_iterations(), out.path.restarts, out.path.ds_first,
                    out.path.status == arcpath::RunStatus::Completed ? "ok" : "stalled");
        if (out.path.status != arcpath::RunStatus::Completed) {
            exit_code = kExitSolver;
        }
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arcpath: arc-length continuation for nonlinear trusses and frames"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Trace the equilibrium path of a model file");
    std::string model_path;
    std::optional<std::string> out_path, shapes_dir;
    std::optional<int> steps;
    std::optional<double> dlambda, psi;
    bool seedless = false;
    run_cmd->add_option("--model", model_path, "Model file")->required();
    run_cmd->add_option("--out", out_path, "Path CSV output file");
    run_cmd->add_option("--shapes", shapes_dir, "Directory for per-step deformed shapes");
    run_cmd->add_option("--steps", steps, "Override the number of load steps (nmax)");
    run_cmd->add_option("--dlambda", dlambda, "Override the first-step load increment");
    run_cmd->add_option("--psi", psi, "Override the constraint shape parameter");
    run_cmd->add_flag("--seedless", seedless,
                      "Accepted for compatibility; runs are always deterministic");

    auto* bench_cmd = app.add_subcommand("bench", "Run the bundled benchmark suite");
    std::string case_name;
    std::string out_dir = "bench_out";
    bench_cmd->add_option("--case", case_name, "Benchmark case name, or 'all'")->required();
    bench_cmd->add_option("--out-dir", out_dir, "Directory for per-case CSV files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run_cmd->parsed()) {
        return cmd_run(model_path, out_path, shapes_dir, steps, dlambda, psi);
    }
    return cmd_bench(case_name, out_dir);
}
