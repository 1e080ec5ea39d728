#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace arcpath {

// Domain error raised by element kinematics (degenerate reference geometry,
// or an element collapsing during deformation). The driver responds by
// cutting the arc-length increment.
struct ElementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal force vector and consistent tangent of a two-node element
// (6 DOFs for both the space truss and the planar beam).
struct ElementResponse {
    Eigen::Matrix<double, 6, 1> force = Eigen::Matrix<double, 6, 1>::Zero();
    Eigen::Matrix<double, 6, 6> stiffness = Eigen::Matrix<double, 6, 6>::Zero();
};

} // namespace arcpath
