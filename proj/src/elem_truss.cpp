#include "arcpath/elem_truss.hpp"

#include <cmath>

namespace arcpath {

const Eigen::Matrix<double, 6, 6>& truss_sign_matrix() {
    static const Eigen::Matrix<double, 6, 6> h = [] {
        Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
        const Eigen::Matrix3d eye = Eigen::Matrix3d::Identity();
        m.block<3, 3>(0, 0) = eye;
        m.block<3, 3>(3, 3) = eye;
        m.block<3, 3>(0, 3) = -eye;
        m.block<3, 3>(3, 0) = -eye;
        return m;
    }();
    return h;
}

TrussKinematics truss_lengths(const Eigen::Vector3d& x1_ref, const Eigen::Vector3d& x2_ref,
                              const Eigen::Vector3d& u1, const Eigen::Vector3d& u2,
                              double length_scale) {
    TrussKinematics kin;
    kin.length0 = (x2_ref - x1_ref).norm();
    const double tiny = 1e-14 * std::max(length_scale, 0.0);
    if (kin.length0 <= tiny) {
        throw ElementError("truss element has zero reference length");
    }
    const Eigen::Vector3d x1 = x1_ref + u1;
    const Eigen::Vector3d x2 = x2_ref + u2;
    kin.length = (x2 - x1).norm();
    if (kin.length <= tiny) {
        throw ElementError("truss element collapsed to zero length");
    }
    kin.b.head<3>() = x1 - x2;
    kin.b.tail<3>() = x2 - x1;
    return kin;
}

ElementResponse truss_response_engineering(const TrussElement& elem,
                                           const Eigen::Vector3d& x1_ref,
                                           const Eigen::Vector3d& x2_ref,
                                           const Eigen::Vector3d& u1,
                                           const Eigen::Vector3d& u2,
                                           double length_scale) {
    const TrussKinematics kin = truss_lengths(x1_ref, x2_ref, u1, u2, length_scale);
    const double ea = elem.youngs * elem.area;
    const double l0 = kin.length0;
    const double l = kin.length;
    const double eps = (l - l0) / l0;

    ElementResponse r;
    r.force = (ea * eps / l) * kin.b;
    r.stiffness = (ea / (l * l * l)) * (kin.b * kin.b.transpose())
                + (ea * eps / l) * truss_sign_matrix();
    return r;
}

ElementResponse truss_response_green(const TrussElement& elem,
                                     const Eigen::Vector3d& x1_ref,
                                     const Eigen::Vector3d& x2_ref,
                                     const Eigen::Vector3d& u1,
                                     const Eigen::Vector3d& u2,
                                     double length_scale) {
    const TrussKinematics kin = truss_lengths(x1_ref, x2_ref, u1, u2, length_scale);
    const double ea = elem.youngs * elem.area;
    const double l0 = kin.length0;
    const double l = kin.length;
    const double eps = (l * l - l0 * l0) / (2.0 * l0 * l0);

    ElementResponse r;
    r.force = (ea * eps / l0) * kin.b;
    r.stiffness = (ea / (l0 * l0 * l0)) * (kin.b * kin.b.transpose())
                + (ea * eps / l0) * truss_sign_matrix();
    return r;
}

ElementResponse truss_response(const TrussElement& elem,
                               const Eigen::Vector3d& x1_ref,
                               const Eigen::Vector3d& x2_ref,
                               const Eigen::Vector3d& u1,
                               const Eigen::Vector3d& u2,
                               double length_scale) {
    if (elem.strain == StrainMeasure::Engineering) {
        return truss_response_engineering(elem, x1_ref, x2_ref, u1, u2, length_scale);
    }
    return truss_response_green(elem, x1_ref, x2_ref, u1, u2, length_scale);
}

} // namespace arcpath
