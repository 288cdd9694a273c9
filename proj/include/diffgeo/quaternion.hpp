#pragma once

#include "diffgeo/types.hpp"

namespace diffgeo {

struct Quaternion {
    double a = 0, b = 0, c = 0, d = 0;

    double norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }
    Quaternion operator-() const { return {-a, -b, -c, -d}; }
};

// Hamilton product.
Quaternion qmul(const Quaternion& p, const Quaternion& q);

// The SO(3) matrix parameterized by a unit quaternion; A(q1)A(q2) = A(q1*q2)
// and A(q) = A(-q). Inputs off the unit sphere by more than 1e-9 are
// normalized and reported through `renormalized`.
Mat3 rotation_matrix(const Quaternion& q, bool* renormalized = nullptr);

// The 120 unit quaternions of the binary icosahedral group:
// {+-1, +-i, +-j, +-k, (+-1+-i+-j+-k)/2} plus the even permutations of
// (0, +-1, +-phi^-1, +-phi)/2.
std::vector<Quaternion> binary_icosahedral();

} // namespace diffgeo
