#include "arcpath/elem_beam2d.hpp"

#include <cmath>

namespace arcpath {

namespace {

struct MidpointState {
    double l0;          // reference (chord) length
    double c0, s0;      // element axis direction cosines
    double c, s;        // cos/sin of the mid-station rotation
    double f, g;        // local current tangent components
    double eps, gam, chi;
};

MidpointState midpoint_state(const Eigen::Vector2d& x1_ref, const Eigen::Vector2d& x2_ref,
                             const Eigen::Matrix<double, 6, 1>& d, double length_scale) {
    MidpointState st;
    const Eigen::Vector2d axis = x2_ref - x1_ref;
    st.l0 = axis.norm();
    const double tiny = 1e-14 * std::max(length_scale, 0.0);
    if (st.l0 <= tiny) {
        throw ElementError("beam element has zero reference length");
    }
    st.c0 = axis.x() / st.l0;
    st.s0 = axis.y() / st.l0;

    // Nodal translations in the element frame; rotations are frame-free in 2D.
    const double u1 = st.c0 * d[0] + st.s0 * d[1];
    const double v1 = -st.s0 * d[0] + st.c0 * d[1];
    const double u2 = st.c0 * d[3] + st.s0 * d[4];
    const double v2 = -st.s0 * d[3] + st.c0 * d[4];
    const double th1 = d[2];
    const double th2 = d[5];

    const double thm = 0.5 * (th1 + th2);
    st.c = std::cos(thm);
    st.s = std::sin(thm);
    st.f = 1.0 + (u2 - u1) / st.l0;
    st.g = (v2 - v1) / st.l0;

    // Reissner strains: [eps; gam] = Lambda(theta)^T [x0' + u'; v'] - [1; 0]
    st.eps = st.c * st.f + st.s * st.g - 1.0;
    st.gam = -st.s * st.f + st.c * st.g;
    st.chi = (th2 - th1) / st.l0;
    return st;
}

} // namespace

ElementResponse beam2d_response(const Beam2DElement& elem,
                                const Eigen::Vector2d& x1_ref,
                                const Eigen::Vector2d& x2_ref,
                                const Eigen::Matrix<double, 6, 1>& d,
                                double length_scale) {
    const MidpointState st = midpoint_state(x1_ref, x2_ref, d, length_scale);
    const double l0 = st.l0;
    const double ea = elem.youngs * elem.area;
    const double gak = elem.shear_modulus() * elem.area * elem.shear_factor;
    const double ei = elem.youngs * elem.inertia;

    const double axial = ea * st.eps;
    const double shear = gak * st.gam;
    const double moment = ei * st.chi;

    // Strain derivatives w.r.t. the local DOF vector (u1,v1,th1,u2,v2,th2).
    using Row6 = Eigen::Matrix<double, 1, 6>;
    Row6 b_eps, b_gam, b_chi;
    const double inv = 1.0 / l0;
    b_eps << -st.c * inv, -st.s * inv, 0.5 * st.gam, st.c * inv, st.s * inv, 0.5 * st.gam;
    b_gam << st.s * inv, -st.c * inv, -0.5 * (1.0 + st.eps),
             -st.s * inv, st.c * inv, -0.5 * (1.0 + st.eps);
    b_chi << 0.0, 0.0, -inv, 0.0, 0.0, inv;

    Eigen::Matrix<double, 6, 1> f_local =
        l0 * (axial * b_eps.transpose() + shear * b_gam.transpose() + moment * b_chi.transpose());

    Eigen::Matrix<double, 6, 6> k_local =
        l0 * (ea * b_eps.transpose() * b_eps
              + gak * b_gam.transpose() * b_gam
              + ei * b_chi.transpose() * b_chi);

    // Geometric part: second derivatives of eps and gam through (f, g, thm).
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 2) = h(2, 0) = axial * (-st.s) + shear * (-st.c);
    h(1, 2) = h(2, 1) = axial * st.c + shear * (-st.s);
    h(2, 2) = axial * (-(1.0 + st.eps)) + shear * (-st.gam);

    Eigen::Matrix<double, 3, 6> t = Eigen::Matrix<double, 3, 6>::Zero();
    t(0, 0) = -inv; t(0, 3) = inv;
    t(1, 1) = -inv; t(1, 4) = inv;
    t(2, 2) = 0.5;  t(2, 5) = 0.5;

    k_local += l0 * t.transpose() * h * t;

    // Rotate to global axes: Lambda = blockdiag(R0, 1, R0, 1).
    Eigen::Matrix<double, 6, 6> lam = Eigen::Matrix<double, 6, 6>::Identity();
    lam(0, 0) = st.c0; lam(0, 1) = -st.s0;
    lam(1, 0) = st.s0; lam(1, 1) = st.c0;
    lam(3, 3) = st.c0; lam(3, 4) = -st.s0;
    lam(4, 3) = st.s0; lam(4, 4) = st.c0;

    ElementResponse r;
    r.force = lam * f_local;
    r.stiffness = lam * k_local * lam.transpose();
    return r;
}

BeamSectionForces beam2d_section_forces(const Beam2DElement& elem,
                                        const Eigen::Vector2d& x1_ref,
                                        const Eigen::Vector2d& x2_ref,
                                        const Eigen::Matrix<double, 6, 1>& d,
                                        double length_scale) {
    const MidpointState st = midpoint_state(x1_ref, x2_ref, d, length_scale);
    BeamSectionForces s;
    s.axial = elem.youngs * elem.area * st.eps;
    s.shear = elem.shear_modulus() * elem.area * elem.shear_factor * st.gam;
    s.moment = elem.youngs * elem.inertia * st.chi;
    return s;
}

ArchScaling normalize_arch_outputs(double load, double u, double v,
                                   double arch_radius, double youngs, double inertia) {
    ArchScaling out;
    out.load = load * arch_radius * arch_radius / (youngs * inertia);
    out.u = u / arch_radius;
    out.v = v / arch_radius;
    return out;
}

} // namespace arcpath
