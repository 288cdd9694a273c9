#pragma once

#include "diffgeo/connection.hpp"

namespace diffgeo {

struct CurvatureReport {
    Tensor4 riemann;         // R^i_jkl
    Tensor4 riemann_lowered; // R_ijkl = sum_m g_im R^m_jkl
    Mat ricci;               // R_ij = sum_k R^k_ikj
    double scalar;           // R = sum g^ij R_ij
};

// Assemble the curvature tensor from Gamma and its derivatives
// (central differences of Gamma with step 1e-4).
CurvatureReport riemann_at(const ChartMetric& M, const Vec& x);

// Sectional curvature of the plane spanned by xi, eta:
// K = <R(xi,eta)eta, xi> / (|xi|^2 |eta|^2 - <xi,eta>^2).
double sectional(const ChartMetric& M, const Vec& x, const Vec& xi, const Vec& eta);

struct FlatnessResult {
    bool flat;
    double max_residual;
};

// True iff max |R^i_jkl| over the sample points is below 1e-6.
FlatnessResult flatness_check(const ChartMetric& M, const std::vector<Vec>& sample_points);

struct JacobiField {
    std::vector<double> t;
    std::vector<Vec> J;
    std::vector<Vec> Jdot; // covariant derivative DJ/dt
};

// Integrate the geodesic-deviation equation D^2 J/dt^2 + R(J,c')c' = 0
// along a computed geodesic.
JacobiField jacobi_deviation(const ChartMetric& M, const GeodesicSolution& geo, const Vec& J0,
                             const Vec& J0dot);

} // namespace diffgeo
