#pragma once

#include "diffgeo/metric.hpp"

namespace diffgeo {

// A parametric surface (u,v) -> R^3 with partial-derivative access.
// Analytic partials are used when supplied; central differences otherwise
// (step 1e-5*(1+|.|) for first, 1e-4*(1+|.|) for second derivatives).
class ParametricSurface {
public:
    using PosFn = std::function<Vec3(double, double)>;
    using DomainFn = std::function<bool(double, double)>;

    struct Partials {
        PosFn Su, Sv, Suu, Suv, Svv;
    };

    explicit ParametricSurface(PosFn S, DomainFn domain = nullptr, Partials partials = {});

    Vec3 eval(double u, double v) const { return S_(u, v); }
    Vec3 Su(double u, double v) const;
    Vec3 Sv(double u, double v) const;
    Vec3 Suu(double u, double v) const;
    Vec3 Suv(double u, double v) const;
    Vec3 Svv(double u, double v) const;
    bool in_domain(double u, double v) const { return domain_(u, v); }

private:
    PosFn S_;
    DomainFn domain_;
    Partials p_;
};

struct FundamentalForms {
    double E, F, G; // first form
    double L, M, N; // second form
    Vec3 normal;    // (Su x Sv)/|Su x Sv|
};

FundamentalForms fundamental_forms(const ParametricSurface& S, double u, double v);

struct SurfaceCurvatures {
    double K_extrinsic; // (LN - M^2)/(EG - F^2)
    double K_intrinsic; // from E,F,G and their derivatives only
    double k1, k2;      // principal curvatures
    double H;           // mean curvature
};

SurfaceCurvatures curvatures(const ParametricSurface& S, double u, double v);

// Residuals of the two Codazzi-Mainardi equations; ~0 on any genuine surface.
std::pair<double, double> codazzi_residuals(const ParametricSurface& S, double u, double v);

// The induced 2D metric g = [[E,F],[F,G]].
ChartMetric induced_metric(const ParametricSurface& S);

// Built-in surfaces.
ParametricSurface make_plane();
ParametricSurface make_sphere(double R);
ParametricSurface make_cylinder(double r);
ParametricSurface make_torus(double R0, double r);
// Surface of revolution of the tractrix with parameter R (constant K = -1/R^2).
ParametricSurface make_tractrix_surface(double R);

// Graph surface (u,v,f(u,v)) from a height function and its derivatives.
struct GraphFunction {
    std::function<double(double, double)> f, fu, fv, fuu, fuv, fvv;
};
ParametricSurface make_graph(const GraphFunction& g);

} // namespace diffgeo
