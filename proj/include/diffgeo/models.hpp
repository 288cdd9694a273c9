#pragma once

#include "diffgeo/metric.hpp"

#include <string>

namespace diffgeo {

enum class ModelKind {
    euclidean,
    sphere_stereographic,
    riemann_constant,
    poincare_half_plane,
    beltrami_ball,
    klein_disk,
    tractrix_surface,
};

struct ModelDescriptor {
    ModelKind kind = ModelKind::euclidean;
    int dim = 2;
    double R = 1.0;     // radius-type parameter (sphere, tractrix)
    double alpha = 0.0; // constant curvature (riemann_constant)
};

// Construct the chart metric of a named model space. Expected sectional
// curvatures: euclidean 0, sphere 1/R^2, riemann_constant alpha,
// half-plane/Beltrami/Klein -1, tractrix surface -1/R^2.
ChartMetric make_model(const ModelDescriptor& desc);

// "name:key=val,..." from the CLI, e.g. "sphere_stereographic:R=2,dim=2".
ModelDescriptor parse_model(const std::string& text);
std::string model_name(ModelKind kind);

// Cross-ratio of four reals: (x3-x1)(x4-x2)/((x3-x2)(x4-x1)).
// Invariant under x -> (ax+b)/(cx+d), ad-bc != 0.
double cross_ratio(double x1, double x2, double x3, double x4);
// Same for four collinear points (positions along their common line).
double cross_ratio(const Vec& p1, const Vec& p2, const Vec& p3, const Vec& p4);

// Hyperbolic distance in the Klein disk from the chord cross-ratio,
// d = 1/2 |log((AQ*BP)/(AP*BQ))| with A,P,Q,B in order along the chord.
double klein_distance(const Vec2& P, const Vec2& Q);

struct TriangleData {
    double a, b, c; // side lengths opposite A, B, C
    double A, B, C; // interior angles (radians)
    double R = 1.0; // scale parameter
};

enum class TriangleMode { spherical, hyperbolic };

// Residuals of the angle-cosine and side-cosine laws under the three cyclic
// relabelings: [0..2] angle law, [3..5] side law.
std::array<double, 6> triangle_law_residuals(const TriangleData& T, TriangleMode mode);

// Harriot-Girard / Lambert check: |excess - area/R^2| (spherical) or
// |defect - area/R^2| (hyperbolic).
double excess_defect_check(const TriangleData& T, double area, TriangleMode mode);

} // namespace diffgeo
