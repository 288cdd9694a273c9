#pragma once

#include "diffgeo/types.hpp"

namespace diffgeo {

// A sampled closed (or open) curve in the plane or in 3-space.
struct PolyCurve {
    std::vector<Vec> points;
    bool closed = true;

    int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
    void validate() const;
};

// Net number of times c travels around p0, by exact per-segment subtended
// angles. p0 must stay clear of the curve.
int winding_number(const PolyCurve& c, const Vec2& p0);

struct RotationInvariants {
    int rotation_number;          // total turning / 2 pi
    double total_signed_curvature; // sum of signed exterior angles
};

RotationInvariants rotation_invariants(const PolyCurve& c);

struct SignedAreaResult {
    double area;                  // 1/2 integral of (-y dx + x dy)
    double decomposition_residual; // gap against the winding-weighted cell sum
};

SignedAreaResult signed_area(const PolyCurve& c);

struct SelfIntersections {
    int count;
    std::vector<Vec2> points;
};

// Pairwise proper segment crossings (adjacent segments excluded).
// Throws on non-generic configurations.
SelfIntersections self_intersections(const PolyCurve& c);

struct LinkingResult {
    int m;               // linking number
    double raw_integral; // the double integral; 4 pi m for closed disjoint curves
};

// Gauss linking integral of two closed space curves, segment-pair midpoint
// rule with refinement until m stabilizes.
LinkingResult linking_number(const PolyCurve& c1, const PolyCurve& c2);

// Canonical figure-eight sample (sin 2t, sin t), 512 points.
PolyCurve figure_eight(int samples = 512);
PolyCurve circle(double radius = 1.0, int samples = 256, bool counterclockwise = true,
                 const Vec2& center = Vec2::Zero());

} // namespace diffgeo
