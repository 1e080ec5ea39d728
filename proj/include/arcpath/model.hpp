#pragma once

#include "arcpath/elem_beam2d.hpp"
#include "arcpath/elem_truss.hpp"
#include "arcpath/system.hpp"

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

namespace arcpath {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Node {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

enum class ModelKind { Truss3D, Beam2D };

// Per-node DOF components. Truss models carry translations (x, y, z);
// planar beam models carry (u, v, theta) stored in the same three slots.
inline constexpr int kNodeDofs = 3;

// Maps (node, component) to a global free-equation index, or -1 when the
// component is fixed (homogeneous Dirichlet only).
class DofMap {
public:
    DofMap() = default;
    DofMap(int node_count, const std::vector<std::pair<int, int>>& fixed);

    int index(int node, int comp) const { return index_.at(node)[comp]; }
    bool is_free(int node, int comp) const { return index(node, comp) >= 0; }
    int free_count() const { return free_count_; }
    int node_count() const { return static_cast<int>(index_.size()); }

private:
    std::vector<std::array<int, kNodeDofs>> index_;
    int free_count_ = 0;
};

class Model : public StructuralSystem {
public:
    ModelKind kind = ModelKind::Truss3D;
    std::vector<Node> nodes;
    std::vector<TrussElement> trusses;
    std::vector<Beam2DElement> beams;
    DofMap dofs;
    Eigen::VectorXd f_ext;                      // reference load on free DOFs
    std::vector<std::pair<int, int>> monitors;  // (node, component)

    int dof_count() const override { return dofs.free_count(); }
    const Eigen::VectorXd& external_force() const override { return f_ext; }
    GlobalResponse evaluate(const Eigen::VectorXd& u) const override { return assemble(u); }

    GlobalResponse assemble(const Eigen::VectorXd& u) const;
    Eigen::VectorXd residual(const Eigen::VectorXd& u, double lambda) const;

    // Bounding-box diagonal of the reference mesh; length scale for the
    // element degeneracy thresholds.
    double span() const;

    // Displacement components of one node, zeros on fixed components.
    Eigen::Vector3d node_values(int node, const Eigen::VectorXd& u) const;

    std::vector<double> monitor_values(const Eigen::VectorXd& u) const;

    // Checks the structural invariants (element node references, load vector
    // length, at least one free DOF, ...). Throws ValidationError.
    void validate() const;
};

} // namespace arcpath
