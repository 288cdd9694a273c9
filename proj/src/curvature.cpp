#include "diffgeo/curvature.hpp"

#include <Eigen/LU>
#include <cmath>

namespace diffgeo {

namespace {

// dGamma[k] = d(Gamma)/dx_k by central differences, step 1e-4.
std::vector<Tensor3> christoffel_derivs(const ChartMetric& M, const Vec& x) {
    const int d = M.dim();
    const double h = 1e-4;
    std::vector<Tensor3> dgam(d);
    Vec xp = x, xm = x;
    for (int k = 0; k < d; ++k) {
        xp[k] = x[k] + h;
        xm[k] = x[k] - h;
        if (!M.in_domain(xp) || !M.in_domain(xm))
            throw std::domain_error("riemann_at: derivative step leaves chart domain");
        Tensor3 gp = christoffel(M, xp);
        Tensor3 gm = christoffel(M, xm);
        Tensor3 dg(d);
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) dg(a, i, j) = (gp(a, i, j) - gm(a, i, j)) / (2 * h);
        dgam[k] = dg;
        xp[k] = x[k];
        xm[k] = x[k];
    }
    return dgam;
}

Tensor4 riemann_components(const ChartMetric& M, const Vec& x) {
    const int d = M.dim();
    Tensor3 gam = christoffel(M, x);
    std::vector<Tensor3> dgam = christoffel_derivs(M, x);

    // R^i_jkl = d_k Gamma^i_lj - d_l Gamma^i_kj
    //           + sum_a (Gamma^i_ka Gamma^a_lj - Gamma^i_la Gamma^a_kj)
    Tensor4 R(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double s = dgam[k](i, l, j) - dgam[l](i, k, j);
                    for (int a = 0; a < d; ++a)
                        s += gam(i, k, a) * gam(a, l, j) - gam(i, l, a) * gam(a, k, j);
                    R(i, j, k, l) = s;
                }
    return R;
}

} // namespace

CurvatureReport riemann_at(const ChartMetric& M, const Vec& x) {
    if (!M.in_domain(x)) throw std::domain_error("riemann_at: point outside chart domain");
    const int d = M.dim();
    Mat g = M.metric_raw(x);
    Eigen::FullPivLU<Mat> lu(g);
    if (!lu.isInvertible()) throw std::runtime_error("riemann_at: singular metric at point");
    Mat ginv = lu.inverse();

    CurvatureReport rep;
    rep.riemann = riemann_components(M, x);
    rep.riemann_lowered = Tensor4(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < d; ++m) s += g(i, m) * rep.riemann(m, j, k, l);
                    rep.riemann_lowered(i, j, k, l) = s;
                }
    rep.ricci = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += rep.riemann(k, i, k, j);
            rep.ricci(i, j) = s;
        }
    rep.scalar = (ginv * rep.ricci).trace();
    return rep;
}

double sectional(const ChartMetric& M, const Vec& x, const Vec& xi, const Vec& eta) {
    const int d = M.dim();
    if (xi.size() != d || eta.size() != d)
        throw std::invalid_argument("sectional: vector dimension mismatch");
    Mat g = M.metric_raw(x);
    double gxx = xi.dot(g * xi);
    double gee = eta.dot(g * eta);
    double gxe = xi.dot(g * eta);
    double gram = gxx * gee - gxe * gxe;
    if (gram < 1e-14) throw std::invalid_argument("sectional: degenerate tangent plane");

    Tensor4 R = riemann_components(M, x);
    // R(xi,eta)eta: component i = sum R^i_jkl eta_j xi_k eta_l
    Vec w = Vec::Zero(d);
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) s += R(i, j, k, l) * eta[j] * xi[k] * eta[l];
        w[i] = s;
    }
    double num = w.dot(g * xi);
    return num / gram;
}

FlatnessResult flatness_check(const ChartMetric& M, const std::vector<Vec>& sample_points) {
    if (sample_points.empty()) throw std::invalid_argument("flatness_check: empty sample list");
    double worst = 0.0;
    for (const Vec& x : sample_points) {
        if (!M.in_domain(x)) throw std::domain_error("flatness_check: sample outside chart domain");
        worst = std::max(worst, riemann_components(M, x).max_abs());
    }
    return {worst < 1e-6, worst};
}

JacobiField jacobi_deviation(const ChartMetric& M, const GeodesicSolution& geo, const Vec& J0,
                             const Vec& J0dot) {
    if (geo.samples.size() < 2) throw std::invalid_argument("jacobi_deviation: empty geodesic");
    if (!J0.allFinite() || !J0dot.allFinite())
        throw std::invalid_argument("jacobi_deviation: initial data must be finite");
    const int d = M.dim();
    CurvePath c = geo.as_curve();

    // First-order system in (J, U) with U = DJ/dt:
    //   J' = U - Gamma(c')(J),  U' = -R(J,c')c' - Gamma(c')(U)
    auto rhs = [&](double t, const Vec& J, const Vec& U, Vec& dJ, Vec& dU) {
        Vec x = c.point(t);
        Vec v = c.velocity(t);
        Tensor3 gam = christoffel(M, x);
        Tensor4 R = riemann_components(M, x);
        dJ = U;
        dU = Vec::Zero(d);
        for (int k = 0; k < d; ++k) {
            double gj = 0.0, gu = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    gj += gam(k, i, j) * v[i] * J[j];
                    gu += gam(k, i, j) * v[i] * U[j];
                }
            dJ[k] -= gj;
            dU[k] -= gu;
        }
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) s += R(i, j, k, l) * v[j] * J[k] * v[l];
            dU[i] -= s;
        }
    };

    JacobiField out;
    const size_t n = geo.samples.size();
    out.t.reserve(n);
    out.J.reserve(n);
    out.Jdot.reserve(n);
    Vec J = J0, U = J0dot;
    out.t.push_back(geo.samples[0].t);
    out.J.push_back(J);
    out.Jdot.push_back(U);

    Vec k1J(d), k1U(d), k2J(d), k2U(d), k3J(d), k3U(d), k4J(d), k4U(d);
    for (size_t i = 0; i + 1 < n; ++i) {
        double t = geo.samples[i].t;
        double h = geo.samples[i + 1].t - t;
        rhs(t, J, U, k1J, k1U);
        rhs(t + 0.5 * h, J + 0.5 * h * k1J, U + 0.5 * h * k1U, k2J, k2U);
        rhs(t + 0.5 * h, J + 0.5 * h * k2J, U + 0.5 * h * k2U, k3J, k3U);
        rhs(t + h, J + h * k3J, U + h * k3U, k4J, k4U);
        J += (h / 6.0) * (k1J + 2 * k2J + 2 * k3J + k4J);
        U += (h / 6.0) * (k1U + 2 * k2U + 2 * k3U + k4U);
        if (!J.allFinite() || !U.allFinite())
            throw std::runtime_error("jacobi_deviation: integration failure");
        out.t.push_back(t + h);
        out.J.push_back(J);
        out.Jdot.push_back(U);
    }
    return out;
}

} // namespace diffgeo
