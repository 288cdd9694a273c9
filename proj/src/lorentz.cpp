#include "diffgeo/lorentz.hpp"

#include <cmath>

namespace diffgeo {

Boost Boost::from_velocity(const Vec3& v, double c, bool orthochronous) {
    if (!(c > 0)) throw std::invalid_argument("Boost: speed of light must be positive");
    const double v2 = v.squaredNorm();
    if (v2 >= c * c) throw std::invalid_argument("Boost: relative speed must be below c");
    Boost B;
    B.v_ = v;
    B.c_ = c;
    B.gamma_ = 1.0 / std::sqrt(1.0 - v2 / (c * c));
    B.orthochronous_ = orthochronous;
    if (v2 > 0.0) {
        Mat3 Pv = v * v.transpose() / v2;
        B.A_ = Mat3::Identity() + (B.gamma_ - 1.0) * Pv;
    }
    return B;
}

Event Boost::apply(const Event& e) const {
    Event out;
    out.x = A_ * (e.x - e.t * v_) + b;
    double sgn = orthochronous_ ? 1.0 : -1.0;
    out.t = sgn * (gamma_ * e.t - gamma_ * v_.dot(e.x) / (c_ * c_)) + t0;
    return out;
}

Eigen::Matrix4d Boost::linear_matrix() const {
    Eigen::Matrix4d L = Eigen::Matrix4d::Zero();
    double sgn = orthochronous_ ? 1.0 : -1.0;
    L.topLeftCorner<3, 3>() = A_;
    L.topRightCorner<3, 1>() = -A_ * v_;
    L.bottomLeftCorner<1, 3>() = -sgn * gamma_ / (c_ * c_) * v_.transpose();
    L(3, 3) = sgn * gamma_;
    return L;
}

Event galilei_apply(const Vec3& v, const Event& e) { return {e.x - e.t * v, e.t}; }

double minkowski_interval(const Event& e1, const Event& e2, double c) {
    double dt = e2.t - e1.t;
    return (e2.x - e1.x).squaredNorm() - c * c * dt * dt;
}

Vec3 velocity_addition_colinear(const Vec3& v1, const Vec3& v2, double c) {
    double n1 = v1.norm();
    Vec3 dir = n1 > 0 ? Vec3(v1 / n1) : (v2.norm() > 0 ? Vec3(v2 / v2.norm()) : Vec3(1, 0, 0));
    double u1 = v1.dot(dir), u2 = v2.dot(dir);
    double w = (u1 + u2) / (1.0 + u1 * u2 / (c * c));
    return w * dir;
}

} // namespace diffgeo
