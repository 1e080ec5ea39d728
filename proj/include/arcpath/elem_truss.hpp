#pragma once

#include "arcpath/element.hpp"

namespace arcpath {

enum class StrainMeasure { Engineering, GreenLagrange };

struct TrussElement {
    int n1 = 0;
    int n2 = 0;
    double area = 0.0;
    double youngs = 0.0;
    StrainMeasure strain = StrainMeasure::Engineering;
};

// Reference and current length plus the vector of current coordinate
// differences [x1-x2, y1-y2, z1-z2, x2-x1, y2-y1, z2-z1].
struct TrussKinematics {
    double length0 = 0.0;
    double length = 0.0;
    Eigen::Matrix<double, 6, 1> b = Eigen::Matrix<double, 6, 1>::Zero();
};

// Constant sign matrix pairing the two nodes: [[I, -I], [-I, I]].
const Eigen::Matrix<double, 6, 6>& truss_sign_matrix();

// length_scale is a characteristic model dimension used for the degeneracy
// thresholds; standalone callers may pass 1.
TrussKinematics truss_lengths(const Eigen::Vector3d& x1_ref, const Eigen::Vector3d& x2_ref,
                              const Eigen::Vector3d& u1, const Eigen::Vector3d& u2,
                              double length_scale);

ElementResponse truss_response_engineering(const TrussElement& elem,
                                           const Eigen::Vector3d& x1_ref,
                                           const Eigen::Vector3d& x2_ref,
                                           const Eigen::Vector3d& u1,
                                           const Eigen::Vector3d& u2,
                                           double length_scale);

ElementResponse truss_response_green(const TrussElement& elem,
                                     const Eigen::Vector3d& x1_ref,
                                     const Eigen::Vector3d& x2_ref,
                                     const Eigen::Vector3d& u1,
                                     const Eigen::Vector3d& u2,
                                     double length_scale);

// Dispatch on the element's strain measure.
ElementResponse truss_response(const TrussElement& elem,
                               const Eigen::Vector3d& x1_ref,
                               const Eigen::Vector3d& x2_ref,
                               const Eigen::Vector3d& u1,
                               const Eigen::Vector3d& u2,
                               double length_scale);

} // namespace arcpath
