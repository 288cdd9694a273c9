#pragma once

#include "diffgeo/metric.hpp"

namespace diffgeo {

// Christoffel symbols Gamma^h_ij of the Levi-Civita connection at x,
// assembled symmetrically in (i,j).
Tensor3 christoffel(const ChartMetric& M, const Vec& x);

// Evaluator form of the symbols, for callers that pass the field around.
struct ChristoffelField {
    int dim;
    std::function<Tensor3(const Vec&)> gamma;
};
ChristoffelField christoffel_field(const ChartMetric& M);

struct GeodesicSample {
    double t;
    Vec position;
    Vec velocity;
};

struct GeodesicDiagnostics {
    double energy_drift = 0.0;   // max relative drift of g(c')(c',c') along samples
    double max_residual = 0.0;   // endpoint mismatch for BVP solutions, else 0
};

struct GeodesicSolution {
    std::vector<GeodesicSample> samples;
    std::vector<double> arc_lengths; // accumulated arc length per sample
    double arc_length = 0.0;
    double step = 0.0;
    bool domain_exit = false;    // integration clipped at the chart boundary
    bool conjugate_flag = false; // BVP shooting Jacobian near-singular (cut-locus indicator)
    GeodesicDiagnostics diagnostics;

    const GeodesicSample& front() const { return samples.front(); }
    const GeodesicSample& back() const { return samples.back(); }
    CurvePath as_curve() const;
};

// Solve x'' + Gamma(x)(x',x') = 0 with c(0)=p, c'(0)=xi on [0,T].
// Classical RK4, fixed step (default T/4096), halved until the speed drift is
// below 1e-8. Exiting the chart truncates the solution and sets domain_exit.
GeodesicSolution geodesic_ivp(const ChartMetric& M, const Vec& p, const Vec& xi, double T,
                              double step = 0.0);

struct BvpResult {
    GeodesicSolution geodesic;
    double distance;
};

// Two-point geodesic: shooting on the initial velocity with damped Newton on
// the endpoint mismatch; discrete-energy descent fallback when shooting stalls.
BvpResult geodesic_bvp(const ChartMetric& M, const Vec& p, const Vec& q);

// Parallel transport of xi0 along c (DX/dt = 0); returns X at c(t1).
Vec parallel_transport(const ChartMetric& M, const CurvePath& c, const Vec& xi0,
                       int steps = 4096);

} // namespace diffgeo
