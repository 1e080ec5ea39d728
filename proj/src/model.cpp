#include "arcpath/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace arcpath {

DofMap::DofMap(int node_count, const std::vector<std::pair<int, int>>& fixed) {
    index_.assign(node_count, {0, 0, 0});
    for (const auto& [node, comp] : fixed) {
        if (node < 0 || node >= node_count || comp < 0 || comp >= kNodeDofs) {
            throw ValidationError("support references unknown node " + std::to_string(node));
        }
        index_[node][comp] = -1;
    }
    free_count_ = 0;
    for (auto& slots : index_) {
        for (int c = 0; c < kNodeDofs; ++c) {
            if (slots[c] == 0) {
                slots[c] = free_count_++;
            }
        }
    }
}

double Model::span() const {
    if (nodes.empty()) {
        return 0.0;
    }
    Eigen::Vector3d lo(nodes[0].x, nodes[0].y, nodes[0].z);
    Eigen::Vector3d hi = lo;
    for (const auto& n : nodes) {
        lo = lo.cwiseMin(Eigen::Vector3d(n.x, n.y, n.z));
        hi = hi.cwiseMax(Eigen::Vector3d(n.x, n.y, n.z));
    }
    return (hi - lo).norm();
}

Eigen::Vector3d Model::node_values(int node, const Eigen::VectorXd& u) const {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (int c = 0; c < kNodeDofs; ++c) {
        const int gi = dofs.index(node, c);
        if (gi >= 0) {
            v[c] = u[gi];
        }
    }
    return v;
}

namespace {

// Scatters a 6-DOF element response into the free-DOF system.
void scatter(const ElementResponse& er, const std::array<int, 6>& gdof,
             Eigen::VectorXd& f, Eigen::MatrixXd& k) {
    for (int i = 0; i < 6; ++i) {
        if (gdof[i] < 0) {
            continue;
        }
        f[gdof[i]] += er.force[i];
        for (int j = 0; j < 6; ++j) {
            if (gdof[j] >= 0) {
                k(gdof[i], gdof[j]) += er.stiffness(i, j);
            }
        }
    }
}

} // namespace

GlobalResponse Model::assemble(const Eigen::VectorXd& u) const {
    const int n = dofs.free_count();
    if (u.size() != n) {
        throw std::invalid_argument("assemble: displacement vector has wrong length");
    }
    GlobalResponse out;
    out.f_int = Eigen::VectorXd::Zero(n);
    out.stiffness = Eigen::MatrixXd::Zero(n, n);
    const double scale = span();

    for (const auto& elem : trusses) {
        const Eigen::Vector3d x1(nodes[elem.n1].x, nodes[elem.n1].y, nodes[elem.n1].z);
        const Eigen::Vector3d x2(nodes[elem.n2].x, nodes[elem.n2].y, nodes[elem.n2].z);
        const Eigen::Vector3d u1 = node_values(elem.n1, u);
        const Eigen::Vector3d u2 = node_values(elem.n2, u);
        const ElementResponse er = truss_response(elem, x1, x2, u1, u2, scale);
        std::array<int, 6> gdof{};
        for (int c = 0; c < 3; ++c) {
            gdof[c] = dofs.index(elem.n1, c);
            gdof[3 + c] = dofs.index(elem.n2, c);
        }
        scatter(er, gdof, out.f_int, out.stiffness);
    }

    for (const auto& elem : beams) {
        const Eigen::Vector2d x1(nodes[elem.n1].x, nodes[elem.n1].y);
        const Eigen::Vector2d x2(nodes[elem.n2].x, nodes[elem.n2].y);
        Eigen::Matrix<double, 6, 1> d;
        d.head<3>() = node_values(elem.n1, u);
        d.tail<3>() = node_values(elem.n2, u);
        const ElementResponse er = beam2d_response(elem, x1, x2, d, scale);
        std::array<int, 6> gdof{};
        for (int c = 0; c < 3; ++c) {
            gdof[c] = dofs.index(elem.n1, c);
            gdof[3 + c] = dofs.index(elem.n2, c);
        }
        scatter(er, gdof, out.f_int, out.stiffness);
    }
    return out;
}

Eigen::VectorXd Model::residual(const Eigen::VectorXd& u, double lambda) const {
    return assemble(u).f_int - lambda * f_ext;
}

std::vector<double> Model::monitor_values(const Eigen::VectorXd& u) const {
    std::vector<double> vals;
    vals.reserve(monitors.size());
    for (const auto& [node, comp] : monitors) {
        const int gi = dofs.index(node, comp);
        vals.push_back(gi >= 0 ? u[gi] : 0.0);
    }
    return vals;
}

void Model::validate() const {
    const int nn = static_cast<int>(nodes.size());
    if (nn == 0) {
        throw ValidationError("model has no nodes");
    }
    for (int i = 0; i < nn; ++i) {
        if (nodes[i].id != i) {
            throw ValidationError("node ids must be contiguous from 0; found id " +
                                  std::to_string(nodes[i].id) + " at position " + std::to_string(i));
        }
    }
    auto check_node = [&](int id, const char* what) {
        if (id < 0 || id >= nn) {
            throw ValidationError(std::string(what) + " references unknown node " + std::to_string(id));
        }
    };
    if (kind == ModelKind::Truss3D && !beams.empty()) {
        throw ValidationError("truss model contains beam elements");
    }
    if (kind == ModelKind::Beam2D && !trusses.empty()) {
        throw ValidationError("beam model contains truss elements");
    }
    for (const auto& e : trusses) {
        check_node(e.n1, "truss element");
        check_node(e.n2, "truss element");
        if (e.n1 == e.n2) {
            throw ValidationError("truss element connects a node to itself");
        }
        if (!(e.area > 0.0) || !(e.youngs > 0.0)) {
            throw ValidationError("truss element needs positive area and modulus");
        }
    }
    for (const auto& e : beams) {
        check_node(e.n1, "beam element");
        check_node(e.n2, "beam element");
        if (e.n1 == e.n2) {
            throw ValidationError("beam element connects a node to itself");
        }
        if (!(e.area > 0.0) || !(e.inertia > 0.0) || !(e.youngs > 0.0)) {
            throw ValidationError("beam element needs positive area, inertia and modulus");
        }
        if (!(e.poisson > -1.0) || e.poisson > 0.5) {
            throw ValidationError("beam Poisson ratio must lie in (-1, 0.5]");
        }
        if (!(e.shear_factor > 0.0)) {
            throw ValidationError("beam shear correction factor must be positive");
        }
        if (nodes[e.n1].z != 0.0 || nodes[e.n2].z != 0.0) {
            throw ValidationError("planar beam nodes must have z = 0");
        }
    }
    if (dofs.node_count() != nn) {
        throw ValidationError("DOF map does not match the node count");
    }
    if (dofs.free_count() < 1) {
        throw ValidationError("model has no free DOFs");
    }
    if (f_ext.size() != dofs.free_count()) {
        throw ValidationError("reference load vector length does not match the free DOF count");
    }
    if (f_ext.norm() == 0.0) {
        throw ValidationError("reference load vector is zero");
    }
    for (const auto& [node, comp] : monitors) {
        check_node(node, "monitor");
        if (comp < 0 || comp >= kNodeDofs) {
            throw ValidationError("monitor component out of range");
        }
        if (!dofs.is_free(node, comp)) {
            throw ValidationError("monitor targets a fixed DOF at node " + std::to_string(node));
        }
    }
    // Degenerate reference geometry is a modelling error, not a runtime one.
    const double scale = span();
    for (const auto& e : trusses) {
        const Eigen::Vector3d a(nodes[e.n1].x, nodes[e.n1].y, nodes[e.n1].z);
        const Eigen::Vector3d b(nodes[e.n2].x, nodes[e.n2].y, nodes[e.n2].z);
        if ((b - a).norm() <= 1e-14 * scale) {
            throw ValidationError("truss element has zero reference length");
        }
    }
    for (const auto& e : beams) {
        const Eigen::Vector3d a(nodes[e.n1].x, nodes[e.n1].y, nodes[e.n1].z);
        const Eigen::Vector3d b(nodes[e.n2].x, nodes[e.n2].y, nodes[e.n2].z);
        if ((b - a).norm() <= 1e-14 * scale) {
            throw ValidationError("beam element has zero reference length");
        }
    }
}

} // namespace arcpath
