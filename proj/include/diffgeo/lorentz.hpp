#pragma once

#include "diffgeo/types.hpp"

namespace diffgeo {

struct Event {
    Vec3 x = Vec3::Zero();
    double t = 0.0;
};

// An inhomogeneous Lorentz transformation built from a relative velocity:
//   y = A (x - t v) + b,   s = -+ gamma v.x / c^2 +- gamma t + t0
// with the rotation-free A = I + (gamma - 1) P_v, satisfying
//   A^T A = I + (|v|^2/(c^2-|v|^2)) P_v  and  |det A| = gamma.
class Boost {
public:
    static Boost from_velocity(const Vec3& v, double c = 1.0, bool orthochronous = true);

    Event apply(const Event& e) const;
    Eigen::Matrix4d linear_matrix() const; // 4x4 block form acting on (x, t)

    const Mat3& A() const { return A_; }
    const Vec3& v() const { return v_; }
    double c() const { return c_; }
    double gamma() const { return gamma_; }
    bool orthochronous() const { return orthochronous_; }

    Vec3 b = Vec3::Zero(); // spatial offset
    double t0 = 0.0;       // time offset

private:
    Boost() = default;
    Vec3 v_ = Vec3::Zero();
    double c_ = 1.0;
    double gamma_ = 1.0;
    Mat3 A_ = Mat3::Identity();
    bool orthochronous_ = true;
};

// Galilei map y = x - t v, s = t (the c -> infinity limit of the boost).
Event galilei_apply(const Vec3& v, const Event& e);

// |x2-x1|^2 - c^2 (t2-t1)^2, the invariant of the transformation.
double minkowski_interval(const Event& e1, const Event& e2, double c);

// Colinear relativistic velocity addition (v1 + v2)/(1 + v1 v2/c^2),
// applied along the common direction.
Vec3 velocity_addition_colinear(const Vec3& v1, const Vec3& v2, double c);

} // namespace diffgeo
