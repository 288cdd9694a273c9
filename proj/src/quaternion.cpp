#include "diffgeo/quaternion.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace diffgeo {

Quaternion qmul(const Quaternion& p, const Quaternion& q) {
    return {
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    };
}

Mat3 rotation_matrix(const Quaternion& q, bool* renormalized) {
    double n = q.norm();
    if (n < 1e-300) throw std::invalid_argument("rotation_matrix: zero quaternion");
    Quaternion u = q;
    bool renorm = std::abs(n - 1.0) > 1e-9;
    if (renorm) {
        u = {q.a / n, q.b / n, q.c / n, q.d / n};
    }
    if (renormalized) *renormalized = renorm;
    const double a = u.a, b = u.b, c = u.c, d = u.d;
    Mat3 A;
    A << a * a - b * b - c * c + d * d, -2 * (a * b + c * d), 2 * (b * d - a * c),
        2 * (a * b - c * d), a * a - b * b + c * c - d * d, -2 * (a * d + b * c),
        2 * (a * c + b * d), 2 * (a * d - b * c), a * a + b * b - c * c - d * d;
    return A;
}

std::vector<Quaternion> binary_icosahedral() {
    std::vector<Quaternion> g;
    g.reserve(120);

    // 8 units
    for (int s : {1, -1}) {
        g.push_back({double(s), 0, 0, 0});
        g.push_back({0, double(s), 0, 0});
        g.push_back({0, 0, double(s), 0});
        g.push_back({0, 0, 0, double(s)});
    }
    // 16 half-sums (+-1 +-i +-j +-k)/2
    for (int sa : {1, -1})
        for (int sb : {1, -1})
            for (int sc : {1, -1})
                for (int sd : {1, -1}) g.push_back({sa * 0.5, sb * 0.5, sc * 0.5, sd * 0.5});

    // 96 icosians: even permutations of (0, 1, 1/phi, phi)/2, signs on the
    // nonzero coordinates
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const std::array<double, 4> base = {0.0, 1.0, 1.0 / phi, phi};

    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
        // permutation parity
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (perm[i] > perm[j]) ++inv;
        if (inv % 2 != 0) continue;
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1}) {
                    std::array<double, 4> signed_base = {0.0, s1 * base[1], s2 * base[2],
                                                         s3 * base[3]};
                    std::array<double, 4> q{};
                    for (int i = 0; i < 4; ++i) q[i] = 0.5 * signed_base[perm[i]];
                    g.push_back({q[0], q[1], q[2], q[3]});
                }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return g;
}

} // namespace diffgeo
