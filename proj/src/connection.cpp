#include "diffgeo/connection.hpp"

#include <Eigen/LU>
#include <cmath>
#include <optional>
#include <sstream>

namespace diffgeo {

Tensor3 christoffel(const ChartMetric& M, const Vec& x) {
    if (!M.in_domain(x)) throw std::domain_error("christoffel: point outside chart domain");
    const int d = M.dim();
    Mat g = M.metric_raw(x);
    Eigen::FullPivLU<Mat> lu(g);
    if (!lu.isInvertible()) throw std::runtime_error("christoffel: singular metric at point");
    Mat ginv = lu.inverse();
    std::vector<Mat> dg = M.metric_derivs(x);

    Tensor3 gamma(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            for (int h = 0; h < d; ++h) {
                double s = 0.0;
                for (int a = 0; a < d; ++a)
                    s += ginv(h, a) * (dg[j](i, a) + dg[i](j, a) - dg[a](j, i));
                s *= 0.5;
                gamma(h, i, j) = s;
                gamma(h, j, i) = s;
            }
        }
    }
    return gamma;
}

ChristoffelField christoffel_field(const ChartMetric& M) {
    return {M.dim(), [M](const Vec& x) { return christoffel(M, x); }};
}

CurvePath GeodesicSolution::as_curve() const {
    std::vector<double> t;
    std::vector<Vec> x, v;
    t.reserve(samples.size());
    x.reserve(samples.size());
    v.reserve(samples.size());
    for (const auto& s : samples) {
        t.push_back(s.t);
        x.push_back(s.position);
        v.push_back(s.velocity);
    }
    return CurvePath::hermite(std::move(t), std::move(x), std::move(v));
}

namespace {

Vec geodesic_accel(const ChartMetric& M, const Vec& x, const Vec& v) {
    const int d = M.dim();
    Tensor3 g = christoffel(M, x);
    Vec a = Vec::Zero(d);
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) s += g(i, j, k) * v[j] * v[k];
        a[i] = -s;
    }
    return a;
}

// One RK4 step of the geodesic system; nullopt when a stage leaves the chart.
std::optional<std::pair<Vec, Vec>> rk4_geo_step(const ChartMetric& M, const Vec& x, const Vec& v,
                                                double h) {
    auto stage = [&](const Vec& xs, const Vec& vs) -> std::optional<std::pair<Vec, Vec>> {
        if (!M.in_domain(xs)) return std::nullopt;
        return std::make_pair(vs, geodesic_accel(M, xs, vs));
    };
    auto k1 = stage(x, v);
    if (!k1) return std::nullopt;
    auto k2 = stage(x + 0.5 * h * k1->first, v + 0.5 * h * k1->second);
    if (!k2) return std::nullopt;
    auto k3 = stage(x + 0.5 * h * k2->first, v + 0.5 * h * k2->second);
    if (!k3) return std::nullopt;
    auto k4 = stage(x + h * k3->first, v + h * k3->second);
    if (!k4) return std::nullopt;
    Vec xn = x + (h / 6.0) * (k1->first + 2 * k2->first + 2 * k3->first + k4->first);
    Vec vn = v + (h / 6.0) * (k1->second + 2 * k2->second + 2 * k3->second + k4->second);
    if (!M.in_domain(xn)) return std::nullopt;
    return std::make_pair(xn, vn);
}

GeodesicSolution integrate_geodesic(const ChartMetric& M, const Vec& p, const Vec& xi, double T,
                                    int nsteps, bool record_samples) {
    GeodesicSolution sol;
    sol.step = T / nsteps;
    Vec x = p, v = xi;
    double e0 = v.dot(M.metric_raw(x) * v);
    double drift = 0.0;

    if (record_samples) {
        sol.samples.reserve(nsteps + 1);
        sol.samples.push_back({0.0, x, v});
    }
    for (int i = 0; i < nsteps; ++i) {
        auto next = rk4_geo_step(M, x, v, sol.step);
        if (!next) {
            sol.domain_exit = true;
            break;
        }
        x = next->first;
        v = next->second;
        double e = v.dot(M.metric_raw(x) * v);
        drift = std::max(drift, std::abs(e - e0) / std::max(e0, 1e-300));
        if (record_samples) sol.samples.push_back({(i + 1) * sol.step, x, v});
    }
    if (!record_samples) sol.samples.push_back({sol.domain_exit ? 0.0 : T, x, v});
    sol.diagnostics.energy_drift = drift;

    // accumulated arc length (trapezoid of metric speeds)
    sol.arc_lengths.resize(sol.samples.size(), 0.0);
    double prev_speed = M.norm(sol.samples[0].position, sol.samples[0].velocity);
    for (size_t i = 1; i < sol.samples.size(); ++i) {
        double sp = M.norm(sol.samples[i].position, sol.samples[i].velocity);
        double dt = sol.samples[i].t - sol.samples[i - 1].t;
        sol.arc_lengths[i] = sol.arc_lengths[i - 1] + 0.5 * dt * (prev_speed + sp);
        prev_speed = sp;
    }
    sol.arc_length = sol.arc_lengths.back();
    return sol;
}

} // namespace

GeodesicSolution geodesic_ivp(const ChartMetric& M, const Vec& p, const Vec& xi, double T,
                              double step) {
    if (!M.in_domain(p)) throw std::domain_error("geodesic_ivp: start point outside chart domain");
    if (!xi.allFinite() || xi.size() != M.dim())
        throw std::invalid_argument("geodesic_ivp: initial velocity must be finite, chart-dimensional");
    if (!(T > 0)) throw std::invalid_argument("geodesic_ivp: need T > 0");

    int nsteps = 4096;
    if (step > 0.0) {
        if (step < T / double(1 << 22)) throw std::runtime_error("geodesic_ivp: step underflow");
        nsteps = std::max(1, static_cast<int>(std::ceil(T / step)));
    }
    GeodesicSolution sol = integrate_geodesic(M, p, xi, T, nsteps, true);
    // halve the step until the conserved speed stops drifting
    for (int halvings = 0; halvings < 5 && sol.diagnostics.energy_drift > 1e-8 &&
                           nsteps <= (1 << 18);
         ++halvings) {
        nsteps *= 2;
        sol = integrate_geodesic(M, p, xi, T, nsteps, true);
    }
    return sol;
}

namespace {

// Endpoint of the [0,1]-parameterized geodesic with initial velocity xi.
Vec shoot(const ChartMetric& M, const Vec& p, const Vec& xi, int nsteps) {
    return integrate_geodesic(M, p, xi, 1.0, nsteps, false).samples.back().position;
}

// Discrete-energy descent (Barzilai-Borwein steps) on an n-point polyline
// joining p,q. Returns an initial-velocity estimate for re-shooting.
Vec polyline_energy_descent(const ChartMetric& M, const Vec& p, const Vec& q, int n, int iters) {
    const int d = M.dim();
    const double h = 1.0 / n;
    const int m = (n - 1) * d; // free coordinates
    Vec X(m);
    for (int k = 1; k < n; ++k)
        X.segment((k - 1) * d, d) = p + (static_cast<double>(k) / n) * (q - p);

    auto node = [&](const Vec& Z, int k) -> Vec {
        if (k == 0) return p;
        if (k == n) return q;
        return Z.segment((k - 1) * d, d);
    };
    auto segment_energy = [&](const Vec& a, const Vec& b) {
        Vec mid = 0.5 * (a + b);
        if (!M.in_domain(mid)) return 1e12;
        Vec dlt = b - a;
        return dlt.dot(M.metric_raw(mid) * dlt) / h;
    };
    auto energy = [&](const Vec& Z) {
        double e = 0.0;
        for (int k = 0; k < n; ++k) e += segment_energy(node(Z, k), node(Z, k + 1));
        return e;
    };
    auto gradient = [&](const Vec& Z) {
        Vec g(m);
        const double ge = 1e-7;
        Vec Zp = Z;
        for (int k = 1; k < n; ++k) {
            for (int c = 0; c < d; ++c) {
                int idx = (k - 1) * d + c;
                double orig = Z[idx];
                Zp[idx] = orig + ge;
                double ep = segment_energy(node(Zp, k - 1), node(Zp, k)) +
                            segment_energy(node(Zp, k), node(Zp, k + 1));
                Zp[idx] = orig - ge;
                double em = segment_energy(node(Zp, k - 1), node(Zp, k)) +
                            segment_energy(node(Zp, k), node(Zp, k + 1));
                Zp[idx] = orig;
                g[idx] = (ep - em) / (2 * ge);
            }
        }
        return g;
    };

    double e_cur = energy(X);
    Vec g = gradient(X);
    double alpha = 0.01 * h / std::max(1.0, g.norm());
    Vec X_prev = X, g_prev = g;
    for (int iter = 0; iter < iters; ++iter) {
        Vec trial = X - alpha * g;
        double e_new = energy(trial);
        int backtracks = 0;
        while (e_new >= e_cur && backtracks < 30) {
            alpha *= 0.5;
            trial = X - alpha * g;
            e_new = energy(trial);
            ++backtracks;
        }
        if (e_new >= e_cur) break;
        X_prev = X;
        g_prev = g;
        X = trial;
        e_cur = e_new;
        g = gradient(X);
        Vec s = X - X_prev, y = g - g_prev;
        double sy = s.dot(y);
        alpha = (sy > 1e-300) ? s.dot(s) / sy : alpha * 2.0;
        if (g.norm() < 1e-12) break;
    }
    // second-order extraction of the initial velocity
    Vec x1 = node(X, 1), x2 = node(X, std::min(2, n));
    return (-3.0 * p + 4.0 * x1 - x2) / (2.0 * h);
}

// Finite-difference Jacobian of the shooting map at xi.
Mat shooting_jacobian(const ChartMetric& M, const Vec& p, const Vec& xi, int steps) {
    const int d = M.dim();
    Mat J(d, d);
    Vec base = shoot(M, p, xi, steps);
    double eps = 1e-6 * std::max(1.0, xi.norm());
    for (int c = 0; c < d; ++c) {
        Vec xip = xi;
        xip[c] += eps;
        J.col(c) = (shoot(M, p, xip, steps) - base) / eps;
    }
    return J;
}

// Damped Newton on the endpoint mismatch from a given initial velocity.
struct NewtonOutcome {
    Vec xi;
    double residual;
    bool converged;
};

NewtonOutcome shoot_newton(const ChartMetric& M, const Vec& p, const Vec& q, Vec xi, double tol,
                           int max_iters) {
    const int fine = 2048, coarse = 512;
    double rn = (shoot(M, p, xi, fine) - q).cwiseAbs().maxCoeff();

    for (int iter = 0; iter < max_iters; ++iter) {
        if (rn <= tol) return {xi, rn, true};

        // coarse-grid Jacobian far out, fine once closing in
        Mat J = shooting_jacobian(M, p, xi, rn < 1e-5 ? fine : coarse);
        Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Vec delta = svd.solve(shoot(M, p, xi, fine) - q);

        double lambda = 1.0;
        bool improved = false;
        while (lambda > 1.0 / 16384.0) {
            Vec trial = xi - lambda * delta;
            double rt = (shoot(M, p, trial, fine) - q).cwiseAbs().maxCoeff();
            if (rt < rn || rt <= tol) {
                xi = trial;
                rn = rt;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }
    return {xi, rn, rn <= tol};
}

} // namespace

BvpResult geodesic_bvp(const ChartMetric& M, const Vec& p, const Vec& q) {
    if (!M.in_domain(p) || !M.in_domain(q))
        throw std::domain_error("geodesic_bvp: endpoint outside chart domain");
    if (M.signature() != Signature::riemannian)
        throw std::invalid_argument("geodesic_bvp: riemannian signature required");
    const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    const double tol = 1e-10 * scale;

    // direct shot from the chart line, then energy-descent restarts
    NewtonOutcome best = shoot_newton(M, p, q, Vec(q - p), tol, 40);
    if (!best.converged) {
        for (int n : {64, 128}) {
            Vec xi0 = polyline_energy_descent(M, p, q, n, 500);
            NewtonOutcome retry = shoot_newton(M, p, q, xi0, tol, 40);
            if (retry.residual < best.residual) best = retry;
            if (best.converged) break;
        }
    }

    GeodesicSolution sol = geodesic_ivp(M, p, best.xi, 1.0);
    double res = (sol.back().position - q).cwiseAbs().maxCoeff();
    sol.diagnostics.max_residual = res;
    if (res > 1e-8 * scale) {
        std::ostringstream os;
        os << "geodesic_bvp: shooting failed to converge (best endpoint residual " << res << ")";
        throw std::runtime_error(os.str());
    }
    // cut-locus indicator: the shooting map degenerates at conjugate points
    Eigen::JacobiSVD<Mat> svd(shooting_jacobian(M, p, best.xi, 512));
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    sol.conjugate_flag = (smax <= 0.0 || smin < 0.02 * smax);
    double distance = sol.arc_length;
    return {std::move(sol), distance};
}

Vec parallel_transport(const ChartMetric& M, const CurvePath& c, const Vec& xi0, int steps) {
    if (xi0.size() != M.dim())
        throw std::invalid_argument("parallel_transport: vector dimension mismatch");
    const int d = M.dim();
    const double h = (c.t1() - c.t0()) / steps;

    auto rhs = [&](double t, const Vec& X) -> Vec {
        Vec x = c.point(t);
        if (!M.in_domain(x)) throw std::domain_error("parallel_transport: curve leaves chart domain");
        Vec v = c.velocity(t);
        Tensor3 g = christoffel(M, x);
        Vec out = Vec::Zero(d);
        for (int k = 0; k < d; ++k) {
            double s = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) s += g(k, i, j) * v[i] * X[j];
            out[k] = -s;
        }
        return out;
    };

    Vec X = xi0;
    for (int i = 0; i < steps; ++i) {
        double t = c.t0() + i * h;
        Vec k1 = rhs(t, X);
        Vec k2 = rhs(t + 0.5 * h, X + 0.5 * h * k1);
        Vec k3 = rhs(t + 0.5 * h, X + 0.5 * h * k2);
        Vec k4 = rhs(t + h, X + h * k3);
        X += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return X;
}

} // namespace diffgeo
