#pragma once

#include "arcpath/arclength.hpp"
#include "arcpath/model.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace arcpath {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_number, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
          line(line_number) {}
};

struct ParsedModel {
    Model model;
    SolverConfig config;
};

// Parses the structured-text model format (see README for the grammar):
// sections nodes / elements / supports / loads / monitors / solver, each
// closed by "end", '#' comments. Unknown keys and dangling references are
// rejected. Solver parameters default to psi=1, epsilon=1e-6, kmax=10,
// nmax=100.
ParsedModel parse_model(std::string_view text);

ParsedModel load_model_file(const std::string& path);

// Canonical serialization; parse(write_model(parse(text))) reproduces the
// same model and re-serializing is byte-identical.
std::string write_model(const Model& model, const SolverConfig& config);

// Path CSV: header "step,lambda,ds,iterations,restarts" plus one column per
// monitored DOF, every float with 17 significant digits. Throws if a
// non-finite value would be serialized.
void write_path_csv(const EquilibriumPath& path, const Model& model, std::ostream& out);
std::string path_csv(const EquilibriumPath& path, const Model& model);

// Reference and current nodal coordinates for one converged state.
void write_deformed_shape(const Model& model, const Eigen::VectorXd& u, std::ostream& out);
std::string deformed_shape_csv(const Model& model, const Eigen::VectorXd& u);

// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_full(double value);

} // namespace arcpath
