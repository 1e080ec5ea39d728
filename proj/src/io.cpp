#include "arcpath/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace arcpath {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                              : eol - pos);
        ++number;
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

        if (const size_t hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        Line line{number, {}};
        std::string token;
        std::istringstream is{std::string(raw)};
        while (is >> token) {
            line.tokens.push_back(token);
        }
        if (!line.tokens.empty()) {
            lines.push_back(std::move(line));
        }
    }
    return lines;
}

double parse_real(const Line& line, const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty()) {
        throw ParseError(line.number, "expected a number, got '" + tok + "'");
    }
    return v;
}

int parse_int(const Line& line, const std::string& tok) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || tok.empty()) {
        throw ParseError(line.number, "expected an integer, got '" + tok + "'");
    }
    return static_cast<int>(v);
}

// key=value pairs of an element line; every key required exactly once.
std::map<std::string, double> parse_properties(const Line& line, size_t first,
                                               const std::set<std::string>& keys) {
    std::map<std::string, double> out;
    for (size_t i = first; i < line.tokens.size(); ++i) {
        const std::string& tok = line.tokens[i];
        const size_t eq = tok.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line.number, "expected key=value, got '" + tok + "'");
        }
        const std::string key = tok.substr(0, eq);
        if (!keys.count(key)) {
            throw ParseError(line.number, "unknown property '" + key + "'");
        }
        if (out.count(key)) {
            throw ParseError(line.number, "duplicate property '" + key + "'");
        }
        out[key] = parse_real(line, tok.substr(eq + 1));
    }
    for (const auto& key : keys) {
        if (!out.count(key)) {
            throw ParseError(line.number, "missing property '" + key + "'");
        }
    }
    return out;
}

int component_index(const Line& line, const std::string& tok) {
    if (tok == "x") return 0;
    if (tok == "y") return 1;
    if (tok == "z") return 2;
    if (tok == "rot") return 3;  // mapped to slot 2 once the model kind is known
    throw ParseError(line.number, "unknown component '" + tok + "' (expected x, y, z or rot)");
}

const char* component_name(ModelKind kind, int comp) {
    static const char* truss_names[] = {"x", "y", "z"};
    static const char* beam_names[] = {"x", "y", "rot"};
    return kind == ModelKind::Truss3D ? truss_names[comp] : beam_names[comp];
}

} // namespace

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

ParsedModel parse_model(std::string_view text) {
    const std::vector<Line> lines = tokenize(text);

    ParsedModel pm;
    Model& model = pm.model;
    SolverConfig& config = pm.config;
    config.psi = 1.0;
    config.epsilon = 1e-6;
    config.k_max = 10;
    config.n_max = 100;

    struct RawSupport { int line, node, comp; };
    struct RawLoad { int line, node, comp; double value; };
    struct RawMonitor { int line, node, comp; };
    std::vector<RawSupport> supports;
    std::vector<RawLoad> loads;
    std::vector<RawMonitor> raw_monitors;

    std::set<std::string> seen_sections;
    size_t i = 0;
    while (i < lines.size()) {
        const Line& header = lines[i];
        const std::string& section = header.tokens[0];
        if (header.tokens.size() != 1) {
            throw ParseError(header.number, "section header '" + section + "' takes no arguments");
        }
        static const std::set<std::string> known = {"nodes", "elements", "supports",
                                                    "loads",  "monitors", "solver"};
        if (!known.count(section)) {
            throw ParseError(header.number, "unknown section '" + section + "'");
        }
        if (!seen_sections.insert(section).second) {
            throw ParseError(header.number, "duplicate section '" + section + "'");
        }
        ++i;
        bool closed = false;
        for (; i < lines.size(); ++i) {
            const Line& line = lines[i];
            if (line.tokens.size() == 1 && line.tokens[0] == "end") {
                closed = true;
                ++i;
                break;
            }
            if (section == "nodes") {
                if (line.tokens.size() != 4) {
                    throw ParseError(line.number, "node line needs: id x y z");
                }
                Node n;
                n.id = parse_int(line, line.tokens[0]);
                n.x = parse_real(line, line.tokens[1]);
                n.y = parse_real(line, line.tokens[2]);
                n.z = parse_real(line, line.tokens[3]);
                for (const auto& other : model.nodes) {
                    if (other.id == n.id) {
                        throw ParseError(line.number, "duplicate node id " + std::to_string(n.id));
                    }
                }
                model.nodes.push_back(n);
            } else if (section == "elements") {
                const std::string& tag = line.tokens[0];
                if (tag == "truss") {
                    if (line.tokens.size() < 4) {
                        throw ParseError(line.number,
                                         "truss line needs: truss <engineering|green> n1 n2 A=.. E=..");
                    }
                    TrussElement e;
                    const std::string& measure = line.tokens[1];
                    if (measure == "engineering") {
                        e.strain = StrainMeasure::Engineering;
                    } else if (measure == "green") {
                        e.strain = StrainMeasure::GreenLagrange;
                    } else {
                        throw ParseError(line.number, "unknown strain measure '" + measure + "'");
                    }
                    e.n1 = parse_int(line, line.tokens[2]);
                    e.n2 = parse_int(line, line.tokens[3]);
                    const auto props = parse_properties(line, 4, {"A", "E"});
                    e.area = props.at("A");
                    e.youngs = props.at("E");
                    model.trusses.push_back(e);
                } else if (tag == "beam") {
                    if (line.tokens.size() < 3) {
                        throw ParseError(line.number,
                                         "beam line needs: beam n1 n2 A=.. I=.. E=.. nu=.. kappa=..");
                    }
                    Beam2DElement e;
                    e.n1 = parse_int(line, line.tokens[1]);
                    e.n2 = parse_int(line, line.tokens[2]);
                    const auto props = parse_properties(line, 3, {"A", "I", "E", "nu", "kappa"});
                    e.area = props.at("A");
                    e.inertia = props.at("I");
                    e.youngs = props.at("E");
                    e.poisson = props.at("nu");
                    e.shear_factor = props.at("kappa");
                    model.beams.push_back(e);
                } else {
                    throw ParseError(line.number, "unknown element type '" + tag + "'");
                }
            } else if (section == "supports") {
                if (line.tokens.size() < 2) {
                    throw ParseError(line.number, "support line needs: node comp [comp ...]");
                }
                const int node = parse_int(line, line.tokens[0]);
                for (size_t t = 1; t < line.tokens.size(); ++t) {
                    supports.push_back({line.number, node, component_index(line, line.tokens[t])});
                }
            } else if (section == "loads") {
                if (line.tokens.size() != 3) {
                    throw ParseError(line.number, "load line needs: node comp value");
                }
                loads.push_back({line.number, parse_int(line, line.tokens[0]),
                                 component_index(line, line.tokens[1]),
                                 parse_real(line, line.tokens[2])});
            } else if (section == "monitors") {
                if (line.tokens.size() != 2) {
                    throw ParseError(line.number, "monitor line needs: node comp");
                }
                raw_monitors.push_back({line.number, parse_int(line, line.tokens[0]),
                                        component_index(line, line.tokens[1])});
            } else if (section == "solver") {
                if (line.tokens.size() != 2) {
                    throw ParseError(line.number, "solver line needs: key value");
                }
                const std::string& key = line.tokens[0];
                if (key == "psi") {
                    config.psi = parse_real(line, line.tokens[1]);
                } else if (key == "dlambda") {
                    config.dlambda_init = parse_real(line, line.tokens[1]);
                } else if (key == "epsilon") {
                    config.epsilon = parse_real(line, line.tokens[1]);
                } else if (key == "kmax") {
                    config.k_max = parse_int(line, line.tokens[1]);
                } else if (key == "nmax") {
                    config.n_max = parse_int(line, line.tokens[1]);
                } else {
                    throw ParseError(line.number, "unknown solver parameter '" + key + "'");
                }
            }
        }
        if (!closed) {
            throw ParseError(header.number, "section '" + section + "' is not closed by 'end'");
        }
    }

    if (model.nodes.empty()) {
        throw ValidationError("model has no nodes");
    }
    std::sort(model.nodes.begin(), model.nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });

    model.kind = model.beams.empty() ? ModelKind::Truss3D : ModelKind::Beam2D;

    // 'z' is only a truss component; 'rot' only a beam one. Both live in
    // slot 2 of the DOF map.
    auto resolve_comp = [&](int line, int comp) -> int {
        if (comp == 3) {
            if (model.kind != ModelKind::Beam2D) {
                throw ParseError(line, "component 'rot' is only valid for beam models");
            }
            return 2;
        }
        if (comp == 2 && model.kind == ModelKind::Beam2D) {
            throw ParseError(line, "component 'z' is not valid for beam models; use x, y or rot");
        }
        return comp;
    };

    const int node_count = static_cast<int>(model.nodes.size());
    std::vector<std::pair<int, int>> fixed;
    std::set<std::pair<int, int>> fixed_set;
    for (const auto& s : supports) {
        if (s.node < 0 || s.node >= node_count) {
            throw ValidationError("support references unknown node " + std::to_string(s.node));
        }
        const auto entry = std::make_pair(s.node, resolve_comp(s.line, s.comp));
        if (fixed_set.insert(entry).second) {
            fixed.push_back(entry);
        }
    }
    model.dofs = DofMap(node_count, fixed);

    model.f_ext = Eigen::VectorXd::Zero(model.dofs.free_count());
    std::set<std::pair<int, int>> loaded;
    for (const auto& l : loads) {
        if (l.node < 0 || l.node >= node_count) {
            throw ValidationError("load references unknown node " + std::to_string(l.node));
        }
        const int comp = resolve_comp(l.line, l.comp);
        if (!loaded.insert({l.node, comp}).second) {
            throw ValidationError("duplicate load entry for node " + std::to_string(l.node));
        }
        const int gi = model.dofs.index(l.node, comp);
        if (gi < 0) {
            throw ValidationError("load targets a fixed DOF at node " + std::to_string(l.node));
        }
        model.f_ext[gi] = l.value;
    }

    for (const auto& m : raw_monitors) {
        if (m.node < 0 || m.node >= node_count) {
            throw ValidationError("monitor references unknown node " + std::to_string(m.node));
        }
        model.monitors.emplace_back(m.node, resolve_comp(m.line, m.comp));
    }

    model.validate();
    return pm;
}

ParsedModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open model file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string write_model(const Model& model, const SolverConfig& config) {
    std::ostringstream out;
    out << "nodes\n";
    for (const auto& n : model.nodes) {
        out << n.id << " " << format_full(n.x) << " " << format_full(n.y) << " "
            << format_full(n.z) << "\n";
    }
    out << "end\n\nelements\n";
    for (const auto& e : model.trusses) {
        out << "truss " << (e.strain == StrainMeasure::Engineering ? "engineering" : "green")
            << " " << e.n1 << " " << e.n2 << " A=" << format_full(e.area)
            << " E=" << format_full(e.youngs) << "\n";
    }
    for (const auto& e : model.beams) {
        out << "beam " << e.n1 << " " << e.n2 << " A=" << format_full(e.area)
            << " I=" << format_full(e.inertia) << " E=" << format_full(e.youngs)
            << " nu=" << format_full(e.poisson) << " kappa=" << format_full(e.shear_factor)
            << "\n";
    }
    out << "end\n\nsupports\n";
    for (int node = 0; node < model.dofs.node_count(); ++node) {
        std::string comps;
        for (int c = 0; c < kNodeDofs; ++c) {
            if (!model.dofs.is_free(node, c)) {
                comps += " ";
                comps += component_name(model.kind, c);
            }
        }
        if (!comps.empty()) {
            out << node << comps << "\n";
        }
    }
    out << "end\n\nloads\n";
    for (int node = 0; node < model.dofs.node_count(); ++node) {
        for (int c = 0; c < kNodeDofs; ++c) {
            const int gi = model.dofs.index(node, c);
            if (gi >= 0 && model.f_ext[gi] != 0.0) {
                out << node << " " << component_name(model.kind, c) << " "
                    << format_full(model.f_ext[gi]) << "\n";
            }
        }
    }
    out << "end\n";
    if (!model.monitors.empty()) {
        out << "\nmonitors\n";
        for (const auto& [node, comp] : model.monitors) {
            out << node << " " << component_name(model.kind, comp) << "\n";
        }
        out << "end\n";
    }
    out << "\nsolver\n";
    out << "psi " << format_full(config.psi) << "\n";
    out << "dlambda " << format_full(config.dlambda_init) << "\n";
    out << "epsilon " << format_full(config.epsilon) << "\n";
    out << "kmax " << config.k_max << "\n";
    out << "nmax " << config.n_max << "\n";
    out << "end\n";
    return out.str();
}

namespace {

void put_value(std::ostream& out, double v) {
    if (!std::isfinite(v)) {
        throw std::runtime_error("refusing to serialize a non-finite value");
    }
    out << format_full(v);
}

} // namespace

void write_path_csv(const EquilibriumPath& path, const Model& model, std::ostream& out) {
    out << "step,lambda,ds,iterations,restarts";
    for (const auto& [node, comp] : model.monitors) {
        out << ",node" << node << "_" << component_name(model.kind, comp);
    }
    out << "\n";
    for (const auto& rec : path.records) {
        out << rec.step << ",";
        put_value(out, rec.lambda);
        out << ",";
        put_value(out, rec.ds);
        out << "," << rec.iterations << "," << rec.restarts_total;
        for (const double v : model.monitor_values(rec.u)) {
            out << ",";
            put_value(out, v);
        }
        out << "\n";
    }
}

std::string path_csv(const EquilibriumPath& path, const Model& model) {
    std::ostringstream ss;
    write_path_csv(path, model, ss);
    return ss.str();
}

void write_deformed_shape(const Model& model, const Eigen::VectorXd& u, std::ostream& out) {
    out << "node,X,Y,Z,x,y,z\n";
    for (const auto& n : model.nodes) {
        const Eigen::Vector3d d = model.node_values(n.id, u);
        const double cx = n.x + d[0];
        const double cy = n.y + d[1];
        // slot 2 is a rotation for beams, not a coordinate
        const double cz = model.kind == ModelKind::Truss3D ? n.z + d[2] : n.z;
        out << n.id << ",";
        put_value(out, n.x);
        out << ",";
        put_value(out, n.y);
        out << ",";
        put_value(out, n.z);
        out << ",";
        put_value(out, cx);
        out << ",";
        put_value(out, cy);
        out << ",";
        put_value(out, cz);
        out << "\n";
    }
}

std::string deformed_shape_csv(const Model& model, const Eigen::VectorXd& u) {
    std::ostringstream ss;
    write_deformed_shape(model, u, ss);
    return ss.str();
}

} // namespace arcpath
