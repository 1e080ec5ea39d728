#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arcpath/arclength.hpp"
#include "arcpath/benchmarks.hpp"
#include "arcpath/io.hpp"
#include "arcpath/model.hpp"

namespace py = pybind11;
using namespace arcpath;

PYBIND11_MODULE(arcpath, m) {
    m.doc() = "Arc-length continuation solver for nonlinear trusses and frames";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ParseError>(m, "ModelParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ModelValidationError", PyExc_ValueError);
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("Truss3D", ModelKind::Truss3D)
        .value("Beam2D", ModelKind::Beam2D);

    py::enum_<RunStatus>(m, "RunStatus")
        .value("Completed", RunStatus::Completed)
        .value("Stalled", RunStatus::Stalled);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("psi", &SolverConfig::psi)
        .def_readwrite("dlambda_init", &SolverConfig::dlambda_init)
        .def_readwrite("epsilon", &SolverConfig::epsilon)
        .def_readwrite("k_max", &SolverConfig::k_max)
        .def_readwrite("n_max", &SolverConfig::n_max);

    py::class_<Model>(m, "Model")
        .def_property_readonly("kind", [](const Model& mdl) { return mdl.kind; })
        .def_property_readonly("n_free", &Model::dof_count)
        .def_property_readonly("n_nodes",
                               [](const Model& mdl) { return mdl.nodes.size(); })
        .def_property_readonly("monitors", [](const Model& mdl) { return mdl.monitors; })
        .def_property_readonly("f_ext", [](const Model& mdl) { return mdl.f_ext; })
        .def("span", &Model::span)
        .def("assemble",
             [](const Model& mdl, const Eigen::VectorXd& u) {
                 GlobalResponse r = mdl.assemble(u);
                 return py::make_tuple(r.f_int, r.stiffness);
             },
             py::arg("u"), "Internal force vector and tangent stiffness at u")
        .def("residual", &Model::residual, py::arg("u"), py::arg("lam"),
             "f_int(u) - lam * f_ext")
        .def("monitor_values", &Model::monitor_values, py::arg("u"));

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("step", &StepRecord::step)
        .def_readonly("load_factor", &StepRecord::lambda)
        .def_readonly("ds", &StepRecord::ds)
        .def_readonly("iterations", &StepRecord::iterations)
        .def_readonly("restarts_total", &StepRecord::restarts_total)
        .def_readonly("u", &StepRecord::u);

    py::class_<EquilibriumPath>(m, "EquilibriumPath")
        .def_readonly("records", &EquilibriumPath::records)
        .def_readonly("total_iterations", &EquilibriumPath::total_iterations)
        .def_readonly("restarts", &EquilibriumPath::restarts)
        .def_readonly("ds_first", &EquilibriumPath::ds_first)
        .def_readonly("status", &EquilibriumPath::status)
        .def("average_iterations", &EquilibriumPath::average_iterations);

    m.def("parse_model",
          [](const std::string& text) {
              ParsedModel pm = parse_model(text);
              return py::make_tuple(std::move(pm.model), pm.config);
          },
          py::arg("text"), "Parse model text; returns (Model, SolverConfig)");

    m.def("load_model_file",
          [](const std::string& path) {
              ParsedModel pm = load_model_file(path);
              return py::make_tuple(std::move(pm.model), pm.config);
          },
          py::arg("path"));

    m.def("write_model", &write_model, py::arg("model"), py::arg("config"));

    m.def("run",
          [](const Model& model, const SolverConfig& config) {
              return run(model, config);
          },
          py::arg("model"), py::arg("config"),
          "Trace the equilibrium path with the arc-length method");

    m.def("first_step",
          [](const Model& model, const SolverConfig& config) {
              FirstStepResult r = first_step(model, config);
              return py::make_tuple(r.u, r.lambda, r.ds, r.iterations);
          },
          py::arg("model"), py::arg("config"),
          "Load-controlled bootstrap; returns (u, lam, ds, iterations)");

    m.def("constraint", &constraint, py::arg("du"), py::arg("dlam"), py::arg("f_ext"),
          py::arg("psi"), py::arg("ds"),
          "Arc-length constraint residual du'du + psi dlam^2 F'F - ds^2");

    m.def("schur_solve",
          [](const Eigen::MatrixXd& k, const Eigen::VectorXd& f, const Eigen::VectorXd& r,
             const Eigen::VectorXd& a, double b, double acons) {
              SchurSolution s = schur_solve(k, f, r, a, b, acons);
              return py::make_tuple(s.dlambda, s.du);
          },
          py::arg("k"), py::arg("f_ext"), py::arg("residual"), py::arg("a"), py::arg("b"),
          py::arg("constraint_value"),
          "Solve the augmented arc-length system; returns (dlam, du)");

    m.def("adapt_step",
          [](bool converged, bool converged_prev, double ds, double ds_min, double ds_max) {
              return adapt_step(converged, converged_prev, ds, ds_min, ds_max);
          },
          py::arg("converged"), py::arg("converged_prev"), py::arg("ds"), py::arg("ds_min"),
          py::arg("ds_max"));

    m.def("normalize_arch_outputs",
          [](double load, double u, double v, double radius, double youngs, double inertia) {
              ArchScaling s = normalize_arch_outputs(load, u, v, radius, youngs, inertia);
              return py::make_tuple(s.load, s.u, s.v);
          },
          py::arg("load"), py::arg("u"), py::arg("v"), py::arg("radius"), py::arg("youngs"),
          py::arg("inertia"));

    m.def("path_csv", &path_csv, py::arg("path"), py::arg("model"));
    m.def("deformed_shape_csv", &deformed_shape_csv, py::arg("model"), py::arg("u"));

    m.def("benchmark_names", [] {
        std::vector<std::string> names;
        for (const auto& c : benchmark_cases()) {
            names.emplace_back(c.name);
        }
        return names;
    });
    m.def("benchmark_model_text", [](const std::string& name) {
        const BenchCase* c = find_benchmark(name);
        if (!c) {
            throw py::value_error("unknown benchmark case '" + name + "'");
        }
        return std::string(c->model_text);
    });
}
