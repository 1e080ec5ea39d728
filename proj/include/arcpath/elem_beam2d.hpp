#pragma once

#include "arcpath/element.hpp"

namespace arcpath {

struct Beam2DElement {
    int n1 = 0;
    int n2 = 0;
    double area = 0.0;     // A
    double inertia = 0.0;  // I
    double youngs = 0.0;   // E
    double poisson = 0.0;  // nu
    double shear_factor = 1.0; // kappa

    double shear_modulus() const { return youngs / (2.0 * (1.0 + poisson)); }
};

// Section resultants at the single integration station.
struct BeamSectionForces {
    double axial = 0.0;   // N = EA * eps
    double shear = 0.0;   // Q = GA*kappa * gamma
    double moment = 0.0;  // M = EI * chi
};

// Geometrically exact planar beam-column (Reissner kinematics), total
// Lagrangian, linear shape functions for u, v, theta and one-point reduced
// integration. Displacement vector d = (u1, v1, th1, u2, v2, th2) in global
// axes; rotations are accumulated angles and may exceed 2*pi.
ElementResponse beam2d_response(const Beam2DElement& elem,
                                const Eigen::Vector2d& x1_ref,
                                const Eigen::Vector2d& x2_ref,
                                const Eigen::Matrix<double, 6, 1>& d,
                                double length_scale);

BeamSectionForces beam2d_section_forces(const Beam2DElement& elem,
                                        const Eigen::Vector2d& x1_ref,
                                        const Eigen::Vector2d& x2_ref,
                                        const Eigen::Matrix<double, 6, 1>& d,
                                        double length_scale);

// Dimensionless load/displacement scaling used by the arch benchmarks:
// load * R^2 / (E*I), u / R, v / R.
struct ArchScaling {
    double load = 0.0;
    double u = 0.0;
    double v = 0.0;
};

ArchScaling normalize_arch_outputs(double load, double u, double v,
                                   double arch_radius, double youngs, double inertia);

} // namespace arcpath
