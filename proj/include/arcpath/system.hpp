#pragma once

#include <Eigen/Dense>

namespace arcpath {

// Assembled internal force and tangent stiffness on the free DOFs.
struct GlobalResponse {
    Eigen::VectorXd f_int;
    Eigen::MatrixXd stiffness;
};

// What the continuation engine needs from a structure: the residual is
// f_int(u) - lambda * external_force(). Implementations may throw
// ElementError from evaluate(); the driver treats that as step failure.
class StructuralSystem {
public:
    virtual ~StructuralSystem() = default;
    virtual int dof_count() const = 0;
    virtual const Eigen::VectorXd& external_force() const = 0;
    virtual GlobalResponse evaluate(const Eigen::VectorXd& u) const = 0;
};

} // namespace arcpath
