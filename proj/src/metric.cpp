#include "diffgeo/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace diffgeo {

namespace {

void check_dim(int dim, const Vec& x, const char* where) {
    if (x.size() != dim) {
        std::ostringstream os;
        os << where << ": point has dimension " << x.size() << ", chart has " << dim;
        throw std::invalid_argument(os.str());
    }
}

} // namespace

ChartMetric::ChartMetric(int dim, MetricFn g, DomainFn in_domain, Signature sig, MetricDerivFn dg)
    : dim_(dim), g_(std::move(g)), domain_(std::move(in_domain)), sig_(sig), dg_(std::move(dg)) {
    if (dim_ < 1) throw std::invalid_argument("ChartMetric: dimension must be positive");
    if (!g_) throw std::invalid_argument("ChartMetric: metric evaluator required");
    if (!domain_) domain_ = [](const Vec&) { return true; };
}

bool ChartMetric::in_domain(const Vec& x) const {
    return x.size() == dim_ && x.allFinite() && domain_(x);
}

Mat ChartMetric::metric_raw(const Vec& x) const {
    Mat g = g_(x);
    return 0.5 * (g + g.transpose());
}

Mat ChartMetric::metric_at(const Vec& x) const {
    check_dim(dim_, x, "metric_at");
    if (!in_domain(x)) throw std::domain_error("metric_at: point outside chart domain");
    Mat g = g_(x);
    if (g.rows() != dim_ || g.cols() != dim_)
        throw std::runtime_error("metric_at: evaluator returned wrong shape");
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::runtime_error("metric_at: metric not symmetric within tolerance");
    Mat gs = 0.5 * (g + g.transpose());

    Eigen::SelfAdjointEigenSolver<Mat> es(gs, Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    int negatives = 0;
    for (int i = 0; i < dim_; ++i) {
        if (ev[i] <= 0.0) ++negatives;
    }
    if (sig_ == Signature::riemannian && negatives != 0)
        throw std::runtime_error("metric_at: riemannian metric not positive definite here");
    if (sig_ == Signature::lorentzian && negatives != 1)
        throw std::runtime_error("metric_at: lorentzian metric must have exactly one negative eigenvalue");
    return gs;
}

std::vector<Mat> ChartMetric::metric_derivs(const Vec& x) const {
    check_dim(dim_, x, "metric_derivs");
    if (dg_) {
        std::vector<Mat> d = dg_(x);
        for (auto& m : d) m = 0.5 * (m + Mat(m.transpose()));
        return d;
    }
    std::vector<Mat> d(dim_);
    Vec xp = x, xm = x;
    for (int k = 0; k < dim_; ++k) {
        double h = 1e-5 * std::max(1.0, std::abs(x[k]));
        xp[k] = x[k] + h;
        xm[k] = x[k] - h;
        if (!in_domain(xp) || !in_domain(xm))
            throw std::domain_error("metric_derivs: finite-difference step leaves chart domain");
        d[k] = (metric_raw(xp) - metric_raw(xm)) / (2.0 * h);
        xp[k] = x[k];
        xm[k] = x[k];
    }
    return d;
}

double ChartMetric::norm(const Vec& x, const Vec& xi) const {
    double q = xi.dot(metric_raw(x) * xi);
    return q <= 0.0 ? 0.0 : std::sqrt(q);
}

// ---------------------------------------------------------------------------
// CurvePath

CurvePath CurvePath::analytic(std::function<Vec(double)> c, std::function<Vec(double)> dc,
                              double t0, double t1) {
    if (!c || !dc) throw std::invalid_argument("CurvePath::analytic: map and derivative required");
    if (!(t1 > t0)) throw std::invalid_argument("CurvePath::analytic: need t1 > t0");
    CurvePath p;
    p.fn_ = std::move(c);
    p.dfn_ = std::move(dc);
    p.t0_ = t0;
    p.t1_ = t1;
    return p;
}

CurvePath CurvePath::sampled(std::vector<Vec> points, double spacing) {
    if (points.size() < 2) throw std::invalid_argument("CurvePath::sampled: need at least 2 points");
    if (!(spacing > 0)) throw std::invalid_argument("CurvePath::sampled: spacing must be positive");
    const size_t n = points.size();
    std::vector<double> t(n);
    std::vector<Vec> v(n);
    for (size_t i = 0; i < n; ++i) t[i] = spacing * static_cast<double>(i);
    for (size_t i = 0; i < n; ++i) {
        if (i == 0 && n >= 3)
            v[i] = (-3.0 * points[0] + 4.0 * points[1] - points[2]) / (2.0 * spacing);
        else if (i == n - 1 && n >= 3)
            v[i] = (3.0 * points[n - 1] - 4.0 * points[n - 2] + points[n - 3]) / (2.0 * spacing);
        else if (i == 0)
            v[i] = (points[1] - points[0]) / spacing;
        else if (i == n - 1)
            v[i] = (points[n - 1] - points[n - 2]) / spacing;
        else
            v[i] = (points[i + 1] - points[i - 1]) / (2.0 * spacing);
    }
    return hermite(std::move(t), std::move(points), std::move(v));
}

CurvePath CurvePath::hermite(std::vector<double> t, std::vector<Vec> x, std::vector<Vec> v) {
    if (t.size() != x.size() || t.size() != v.size() || t.size() < 2)
        throw std::invalid_argument("CurvePath::hermite: inconsistent sample arrays");
    CurvePath p;
    p.t0_ = t.front();
    p.t1_ = t.back();
    p.t_ = std::move(t);
    p.x_ = std::move(x);
    p.v_ = std::move(v);
    return p;
}

int CurvePath::segment_of(double t) const {
    const int n = static_cast<int>(t_.size());
    int lo = 0, hi = n - 2;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (t_[mid] <= t) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

Vec CurvePath::point(double t) const {
    if (fn_) return fn_(t);
    int i = segment_of(t);
    double h = t_[i + 1] - t_[i];
    double s = (t - t_[i]) / h;
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * x_[i] + (h10 * h) * v_[i] + h01 * x_[i + 1] + (h11 * h) * v_[i + 1];
}

Vec CurvePath::velocity(double t) const {
    if (dfn_) return dfn_(t);
    int i = segment_of(t);
    double h = t_[i + 1] - t_[i];
    double s = (t - t_[i]) / h;
    double s2 = s * s;
    double d00 = (6 * s2 - 6 * s) / h, d10 = 3 * s2 - 4 * s + 1;
    double d01 = (-6 * s2 + 6 * s) / h, d11 = 3 * s2 - 2 * s;
    return d00 * x_[i] + d10 * v_[i] + d01 * x_[i + 1] + d11 * v_[i + 1];
}

// ---------------------------------------------------------------------------
// curve_measures

namespace {

struct Integrands {
    double speed;  // sqrt(g(c')(c',c'))
    double energy; // g(c')(c',c')
};

Integrands eval_integrands(const ChartMetric& M, const CurvePath& c, double t) {
    Vec x = c.point(t);
    if (!M.in_domain(x)) throw std::domain_error("curve_measures: curve leaves chart domain");
    Vec v = c.velocity(t);
    double q = v.dot(M.metric_raw(x) * v);
    if (q < -1e-12)
        throw std::runtime_error("curve_measures: negative quadratic form (signature misuse)");
    if (q < 0.0) q = 0.0;
    return {std::sqrt(q), q};
}

// Composite Simpson over n panels (n even).
CurveMeasures simpson(const ChartMetric& M, const CurvePath& c, int n) {
    double a = c.t0(), b = c.t1();
    double h = (b - a) / n;
    Integrands f0 = eval_integrands(M, c, a);
    Integrands fn = eval_integrands(M, c, b);
    double sl = f0.speed + fn.speed, se = f0.energy + fn.energy;
    for (int i = 1; i < n; ++i) {
        Integrands fi = eval_integrands(M, c, a + i * h);
        double w = (i % 2 == 1) ? 4.0 : 2.0;
        sl += w * fi.speed;
        se += w * fi.energy;
    }
    return {sl * h / 3.0, se * h / 3.0};
}

} // namespace

CurveMeasures curve_measures(const ChartMetric& M, const CurvePath& c) {
    if (M.signature() != Signature::riemannian)
        throw std::invalid_argument("curve_measures: riemannian signature required");

    if (c.is_sampled()) {
        // fixed sample grid: Simpson through the interpolant at twice the
        // sample resolution
        int n = std::max(2, 2 * ((c.sample_count() - 1 + 1) / 2));
        return simpson(M, c, 2 * n);
    }

    int n = 2048;
    CurveMeasures prev = simpson(M, c, n);
    while (n < (1 << 20)) {
        n *= 2;
        CurveMeasures cur = simpson(M, c, n);
        double scale = std::max({1e-300, std::abs(cur.length), std::abs(cur.energy)});
        if (std::abs(cur.length - prev.length) < 1e-10 * scale &&
            std::abs(cur.energy - prev.energy) < 1e-10 * scale)
            return cur;
        prev = cur;
    }
    return prev;
}

InnerProduct inner_product(const ChartMetric& M, const Vec& x, const Vec& xi, const Vec& eta) {
    if (!M.in_domain(x)) throw std::domain_error("inner_product: point outside chart domain");
    Mat g = M.metric_raw(x);
    double value = xi.dot(g * eta);
    double n1 = std::sqrt(std::max(0.0, xi.dot(g * xi)));
    double n2 = std::sqrt(std::max(0.0, eta.dot(g * eta)));
    InnerProduct out{value, std::nullopt};
    if (n1 > 0.0 && n2 > 0.0) {
        double c = value / (n1 * n2);
        c = std::clamp(c, -1.0, 1.0);
        out.angle = std::acos(c);
    }
    return out;
}

} // namespace diffgeo
