#pragma once

#include "diffgeo/types.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace diffgeo {

enum class Signature { riemannian, lorentzian };

// A metric tensor field on a single coordinate chart. Immutable after
// construction; all evaluation is pure.
class ChartMetric {
public:
    using MetricFn = std::function<Mat(const Vec&)>;
    using MetricDerivFn = std::function<std::vector<Mat>(const Vec&)>; // dg[k] = dg/dx_k
    using DomainFn = std::function<bool(const Vec&)>;

    ChartMetric(int dim, MetricFn g, DomainFn in_domain,
                Signature sig = Signature::riemannian, MetricDerivFn dg = nullptr);

    int dim() const { return dim_; }
    Signature signature() const { return sig_; }
    bool has_analytic_derivs() const { return static_cast<bool>(dg_); }
    bool in_domain(const Vec& x) const;

    // Symmetrized g(x) with domain, symmetry and signature validation.
    Mat metric_at(const Vec& x) const;

    // Symmetrized g(x) without the (comparatively costly) eigenvalue checks.
    // Inner loops of the solvers use this path.
    Mat metric_raw(const Vec& x) const;

    // dg/dx_k for k = 0..dim-1. Analytic when provided, otherwise central
    // differences with step h_k = 1e-5 * max(1, |x_k|).
    std::vector<Mat> metric_derivs(const Vec& x) const;

    double norm(const Vec& x, const Vec& xi) const;

private:
    int dim_;
    MetricFn g_;
    DomainFn domain_;
    Signature sig_;
    MetricDerivFn dg_;
};

// A curve in chart coordinates: analytic (map + derivative on [t0,t1]) or a
// uniformly sampled point list. Sampled curves are evaluated by cubic Hermite
// interpolation; velocities come with the samples or from central differences.
class CurvePath {
public:
    static CurvePath analytic(std::function<Vec(double)> c, std::function<Vec(double)> dc,
                              double t0, double t1);
    static CurvePath sampled(std::vector<Vec> points, double spacing);
    static CurvePath hermite(std::vector<double> t, std::vector<Vec> x, std::vector<Vec> v);

    Vec point(double t) const;
    Vec velocity(double t) const;
    double t0() const { return t0_; }
    double t1() const { return t1_; }
    bool is_sampled() const { return !fn_; }
    int sample_count() const { return static_cast<int>(x_.size()); }

private:
    CurvePath() = default;
    int segment_of(double t) const;

    std::function<Vec(double)> fn_, dfn_;
    double t0_ = 0.0, t1_ = 1.0;
    std::vector<double> t_;
    std::vector<Vec> x_, v_;
};

struct CurveMeasures {
    double length;
    double energy;
};

// Arc length and energy of a curve under M, by composite Simpson quadrature
// (panels doubled until the relative change is < 1e-10, cap 2^20).
CurveMeasures curve_measures(const ChartMetric& M, const CurvePath& c);

struct InnerProduct {
    double value;
    std::optional<double> angle; // absent when either argument has zero norm
};

InnerProduct inner_product(const ChartMetric& M, const Vec& x, const Vec& xi, const Vec& eta);

} // namespace diffgeo
