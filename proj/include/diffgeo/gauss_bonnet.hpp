#pragma once

#include "diffgeo/connection.hpp"
#include "diffgeo/models.hpp"
#include "diffgeo/surfaces.hpp"

#include <array>

namespace diffgeo {

struct GeodesicTriangle {
    std::array<Vec, 3> vertices;            // p, q, r
    std::array<GeodesicSolution, 3> sides;  // p->q, q->r, r->p
    std::array<double, 3> interior_angles;  // at p, q, r
};

// Assemble a geodesic triangle: sides by two-point solving, angles from the
// metric inner product of the side velocities at each vertex.
GeodesicTriangle build_triangle(const ChartMetric& M, const Vec& p, const Vec& q, const Vec& r);

struct TriangleReport {
    double integral;        // curvature integral over the triangle
    double excess;          // angle sum - pi
    double holonomy_angle;  // |rotation of the transported frame|
    double holonomy_signed; // signed rotation (orientation not fixed by the formula)
};

// Curvature integral, angle excess and perimeter-transport holonomy of a
// geodesic triangle in a 2D chart.
TriangleReport triangle_report(const ChartMetric& M, const GeodesicTriangle& T);

// Area of the triangle (integral of the surface element alone).
double triangle_area(const ChartMetric& M, const GeodesicTriangle& T);

// Side lengths + angles in the labeling convention of the triangle laws
// (angle A at vertex p, side a opposite it).
TriangleData triangle_data_from(const GeodesicTriangle& T, double R);

struct ClosedSurfaceCurvature {
    double total;    // integral of K over the closed surface
    double residual; // |total - 2 pi chi|
};

// Total curvature of a surface that closes up over [u0,u1]x[v0,v1],
// checked against 2 pi chi.
ClosedSurfaceCurvature total_curvature_closed(const ParametricSurface& S, double u0, double u1,
                                              double v0, double v1, int chi);

struct EulerCharacteristic {
    int chi;
    bool triangulation_warning; // set when 3f != 2e
};

EulerCharacteristic euler_characteristic(int v, int e, int f);

} // namespace diffgeo
