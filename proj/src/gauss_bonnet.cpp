#include "diffgeo/gauss_bonnet.hpp"

#include "diffgeo/curvature.hpp"

#include <cmath>
#include <functional>

namespace diffgeo {

GeodesicTriangle build_triangle(const ChartMetric& M, const Vec& p, const Vec& q, const Vec& r) {
    if (M.dim() != 2) throw std::invalid_argument("build_triangle: 2D charts only");
    GeodesicTriangle T;
    T.vertices = {p, q, r};
    T.sides = {geodesic_bvp(M, p, q).geodesic, geodesic_bvp(M, q, r).geodesic,
               geodesic_bvp(M, r, p).geodesic};

    auto angle_at = [&](const Vec& x, const Vec& out_going, const Vec& in_coming) {
        auto ip = inner_product(M, x, out_going, Vec(-in_coming));
        if (!ip.angle) throw std::runtime_error("build_triangle: zero side velocity");
        return *ip.angle;
    };
    T.interior_angles[0] = angle_at(p, T.sides[0].front().velocity, T.sides[2].back().velocity);
    T.interior_angles[1] = angle_at(q, T.sides[1].front().velocity, T.sides[0].back().velocity);
    T.interior_angles[2] = angle_at(r, T.sides[2].front().velocity, T.sides[1].back().velocity);

    for (double a : T.interior_angles) {
        if (a < 1e-8 || a > M_PI - 1e-8)
            throw std::invalid_argument("build_triangle: degenerate (collinear) vertices");
    }
    return T;
}

namespace {

// Boundary polygon of the triangle: each geodesic side resampled at
// `per_side` chart points (endpoint of each side dropped to avoid repeats).
std::vector<Vec2> boundary_polygon(const GeodesicTriangle& T, int per_side) {
    std::vector<Vec2> poly;
    poly.reserve(3 * per_side);
    for (const auto& side : T.sides) {
        CurvePath c = side.as_curve();
        for (int i = 0; i < per_side; ++i) {
            double t = c.t0() + (c.t1() - c.t0()) * i / per_side;
            Vec x = c.point(t);
            poly.emplace_back(x[0], x[1]);
        }
    }
    return poly;
}

double polygon_signed_area(const std::vector<Vec2>& poly) {
    double s = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        s += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * s;
}

struct ChartTri {
    Vec2 a, b, c;
};

// Degree-2 midpoint rule; signed triangle area carries the orientation.
double tri_estimate(const std::function<double(const Vec2&)>& f, const ChartTri& t) {
    double area2 = (t.b.x() - t.a.x()) * (t.c.y() - t.a.y()) -
                   (t.c.x() - t.a.x()) * (t.b.y() - t.a.y());
    double area = 0.5 * area2;
    Vec2 mab = 0.5 * (t.a + t.b), mbc = 0.5 * (t.b + t.c), mca = 0.5 * (t.c + t.a);
    return area / 3.0 * (f(mab) + f(mbc) + f(mca));
}

// Adaptive quadrature over the polygon via a centroid fan and quadtree
// refinement (refine while the 4-way split changes a cell by > cell_tol).
double integrate_polygon(const std::function<double(const Vec2&)>& f, std::vector<Vec2> poly,
                         double cell_tol, int max_cells) {
    if (polygon_signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    Vec2 centroid = Vec2::Zero();
    for (const Vec2& p : poly) centroid += p;
    centroid /= static_cast<double>(poly.size());

    int cells = 0;
    bool budget_hit = false;
    std::function<double(const ChartTri&, double, int)> refine =
        [&](const ChartTri& t, double coarse, int depth) -> double {
        Vec2 mab = 0.5 * (t.a + t.b), mbc = 0.5 * (t.b + t.c), mca = 0.5 * (t.c + t.a);
        ChartTri kids[4] = {{t.a, mab, mca}, {mab, t.b, mbc}, {mca, mbc, t.c}, {mab, mbc, mca}};
        double fine = 0.0;
        double est[4];
        for (int i = 0; i < 4; ++i) {
            est[i] = tri_estimate(f, kids[i]);
            fine += est[i];
        }
        cells += 4;
        if (std::abs(fine - coarse) <= cell_tol || depth >= 24) return fine;
        if (cells >= max_cells) {
            budget_hit = true;
            return fine;
        }
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) sum += refine(kids[i], est[i], depth + 1);
        return sum;
    };

    double total = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        ChartTri t{centroid, poly[i], poly[(i + 1) % poly.size()]};
        double coarse = tri_estimate(f, t);
        ++cells;
        total += refine(t, coarse, 0);
    }
    if (budget_hit)
        throw std::runtime_error("triangle quadrature: cell budget exceeded before convergence");
    return total;
}

double integrate_over_triangle(const ChartMetric& M, const GeodesicTriangle& T,
                               bool with_curvature) {
    const Vec2 e1(1, 0), e2(0, 1);
    auto f = [&](const Vec2& p) {
        Vec x(2);
        x << p.x(), p.y();
        Mat g = M.metric_raw(x);
        double ds = std::sqrt(std::max(0.0, g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)));
        if (!with_curvature) return ds;
        return sectional(M, x, Vec(e1), Vec(e2)) * ds;
    };
    return integrate_polygon(f, boundary_polygon(T, 128), 1e-7, 1 << 16);
}

// Transport a d x k frame along one curve (single RK4 pass for all columns).
Mat transport_frame(const ChartMetric& M, const CurvePath& c, Mat X, int steps) {
    const int d = M.dim();
    const double h = (c.t1() - c.t0()) / steps;
    auto rhs = [&](double t, const Mat& F) -> Mat {
        Vec x = c.point(t);
        Vec v = c.velocity(t);
        Tensor3 gam = christoffel(M, x);
        Mat out = Mat::Zero(d, F.cols());
        for (int col = 0; col < F.cols(); ++col)
            for (int k = 0; k < d; ++k) {
                double s = 0.0;
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) s += gam(k, i, j) * v[i] * F(j, col);
                out(k, col) = -s;
            }
        return out;
    };
    for (int i = 0; i < steps; ++i) {
        double t = c.t0() + i * h;
        Mat k1 = rhs(t, X);
        Mat k2 = rhs(t + 0.5 * h, X + 0.5 * h * k1);
        Mat k3 = rhs(t + 0.5 * h, X + 0.5 * h * k2);
        Mat k4 = rhs(t + h, X + h * k3);
        X += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return X;
}

} // namespace

TriangleReport triangle_report(const ChartMetric& M, const GeodesicTriangle& T) {
    if (M.dim() != 2) throw std::invalid_argument("triangle_report: 2D charts only");
    TriangleReport rep{};
    rep.integral = integrate_over_triangle(M, T, true);
    rep.excess = T.interior_angles[0] + T.interior_angles[1] + T.interior_angles[2] - M_PI;

    // orthonormal frame at the base vertex, transported around the perimeter
    const Vec& p = T.vertices[0];
    Mat g = M.metric_raw(p);
    Vec e1(2), e2(2);
    e1 << 1, 0;
    e1 /= std::sqrt(e1.dot(g * e1));
    e2 << 0, 1;
    e2 -= e2.dot(g * e1) * e1;
    e2 /= std::sqrt(e2.dot(g * e2));

    Mat frame(2, 2);
    frame.col(0) = e1;
    frame.col(1) = e2;
    for (const auto& side : T.sides) frame = transport_frame(M, side.as_curve(), frame, 2048);

    Vec t1 = frame.col(0);
    rep.holonomy_signed = std::atan2(t1.dot(g * e2), t1.dot(g * e1));
    rep.holonomy_angle = std::abs(rep.holonomy_signed);
    return rep;
}

double triangle_area(const ChartMetric& M, const GeodesicTriangle& T) {
    return integrate_over_triangle(M, T, false);
}

TriangleData triangle_data_from(const GeodesicTriangle& T, double R) {
    TriangleData d;
    d.A = T.interior_angles[0];
    d.B = T.interior_angles[1];
    d.C = T.interior_angles[2];
    d.a = T.sides[1].arc_length; // q->r, opposite p
    d.b = T.sides[2].arc_length; // r->p, opposite q
    d.c = T.sides[0].arc_length; // p->q, opposite r
    d.R = R;
    return d;
}

ClosedSurfaceCurvature total_curvature_closed(const ParametricSurface& S, double u0, double u1,
                                              double v0, double v1, int chi) {
    // periodicity: v-direction must match up; u-direction matches up or
    // collapses to a point (polar cap) at each end
    const int nb = 17;
    auto close_enough = [](const Vec3& a, const Vec3& b) { return (a - b).norm() < 1e-9; };
    for (int i = 0; i <= nb; ++i) {
        double u = u0 + (u1 - u0) * i / nb;
        if (!close_enough(S.eval(u, v0), S.eval(u, v1)))
            throw std::invalid_argument("total_curvature_closed: surface not periodic in v");
    }
    bool u_periodic = true, u_caps = true;
    for (int i = 0; i <= nb; ++i) {
        double v = v0 + (v1 - v0) * i / nb;
        if (!close_enough(S.eval(u0, v), S.eval(u1, v))) u_periodic = false;
        if (!close_enough(S.eval(u0, v), S.eval(u0, v0)) ||
            !close_enough(S.eval(u1, v), S.eval(u1, v0)))
            u_caps = false;
    }
    if (!u_periodic && !u_caps)
        throw std::invalid_argument("total_curvature_closed: surface not closed in u");

    // composite Gauss-Legendre 3x3 per cell; nodes stay interior, so polar
    // degeneracies on the rectangle edge are never evaluated
    static const double gx[3] = {-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    auto integrate = [&](int n) {
        double hu = (u1 - u0) / n, hv = (v1 - v0) / n;
        double total = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double cu = u0 + (i + 0.5) * hu, cv = v0 + (j + 0.5) * hv;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        double u = cu + 0.5 * hu * gx[a];
                        double v = cv + 0.5 * hv * gx[b];
                        FundamentalForms f = fundamental_forms(S, u, v);
                        double det = f.E * f.G - f.F * f.F;
                        double K = (f.L * f.N - f.M * f.M) / det;
                        total += gw[a] * gw[b] * K * std::sqrt(det);
                    }
            }
        return total * (u1 - u0) * (v1 - v0) / (4.0 * n * n);
    };

    double prev = integrate(32);
    double cur = prev;
    for (int n = 64; n <= 512; n *= 2) {
        cur = integrate(n);
        if (std::abs(cur - prev) < 1e-6) break;
        prev = cur;
    }
    return {cur, std::abs(cur - 2.0 * M_PI * chi)};
}

EulerCharacteristic euler_characteristic(int v, int e, int f) {
    if (v < 0 || e < 0 || f < 0)
        throw std::invalid_argument("euler_characteristic: counts must be nonnegative");
    return {v - e + f, 3 * f != 2 * e};
}

} // namespace diffgeo
