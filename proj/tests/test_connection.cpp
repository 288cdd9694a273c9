#include "diffgeo/connection.hpp"
#include "diffgeo/models.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace diffgeo;

namespace {

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

} // namespace

TEST_CASE("christoffel symbols of the flat and half-plane metrics") {
    ChartMetric eu = make_model({ModelKind::euclidean, 3, 1, 0});
    Vec x(3);
    x << 1.0, -2.0, 0.5;
    CHECK(christoffel(eu, x).max_abs() == 0.0);

    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    double y = 1.7;
    Tensor3 g = christoffel(hp, v2(0.4, y));
    CHECK(g(0, 0, 1) == doctest::Approx(-1.0 / y).epsilon(1e-12));
    CHECK(g(0, 1, 0) == doctest::Approx(-1.0 / y).epsilon(1e-12));
    CHECK(g(1, 0, 0) == doctest::Approx(1.0 / y).epsilon(1e-12));
    CHECK(g(1, 1, 1) == doctest::Approx(-1.0 / y).epsilon(1e-12));
    CHECK(g(0, 0, 0) == doctest::Approx(0.0));
    CHECK(g(1, 0, 1) == doctest::Approx(0.0));

    // conformal factor has vanishing gradient at the chart origin
    ChartMetric sph = make_model({ModelKind::sphere_stereographic, 2, 1, 0});
    CHECK(christoffel(sph, v2(0, 0)).max_abs() < 1e-14);
}

TEST_CASE("christoffel is exactly symmetric in the lower pair") {
    ChartMetric kd = make_model({ModelKind::klein_disk, 2, 1, 0});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-0.6, 0.6);
    for (int rep = 0; rep < 10; ++rep) {
        Tensor3 g = christoffel(kd, v2(U(rng), U(rng)));
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) CHECK(g(k, i, j) == g(k, j, i));
    }
}

TEST_CASE("geodesic_ivp: euclidean straight line") {
    ChartMetric eu = make_model({ModelKind::euclidean, 2, 1, 0});
    GeodesicSolution s = geodesic_ivp(eu, v2(0, 0), v2(1, 2), 1.0);
    CHECK((s.back().position - v2(1, 2)).norm() < 1e-12);
    CHECK(s.diagnostics.energy_drift < 1e-12);
    CHECK_FALSE(s.domain_exit);
}

TEST_CASE("geodesic_ivp: half-plane geodesics are circles orthogonal to the axis") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    GeodesicSolution s = geodesic_ivp(hp, v2(0, 1), v2(1, 0), 6.0);
    // this one is the unit circle about the origin
    double worst = 0.0;
    for (const auto& smp : s.samples)
        worst = std::max(worst, std::abs(smp.position.norm() - 1.0));
    CHECK(worst < 1e-5);
    CHECK(s.diagnostics.energy_drift < 1e-8);
}

TEST_CASE("geodesic_ivp: quarter great circle on the sphere chart") {
    ChartMetric sph = make_model({ModelKind::sphere_stereographic, 2, 1.0, 0});
    GeodesicSolution s = geodesic_ivp(sph, v2(1, 0), v2(0, 1), M_PI / 2);
    CHECK((s.back().position - v2(0, 1)).norm() < 1e-6);
    CHECK(std::abs(s.arc_length - M_PI / 2) < 1e-6);
}

TEST_CASE("geodesic_ivp: domain exit truncates and flags") {
    // the tractrix chart has a genuine edge at u = R, reached at finite length
    ChartMetric tr = make_model({ModelKind::tractrix_surface, 2, 1.0, 0});
    GeodesicSolution s = geodesic_ivp(tr, v2(0.5, 0), v2(1, 0), 3.0);
    CHECK(s.domain_exit);
    CHECK(s.samples.back().position[0] <= 1.0);
    CHECK(s.samples.back().t < 3.0);
}

TEST_CASE("geodesic_ivp: step underflow") {
    ChartMetric eu = make_model({ModelKind::euclidean, 2, 1, 0});
    CHECK_THROWS_AS(geodesic_ivp(eu, v2(0, 0), v2(1, 0), 1.0, 1e-9), std::runtime_error);
}

TEST_CASE("geodesic_bvp: euclidean distance is the Pythagorean value") {
    ChartMetric eu = make_model({ModelKind::euclidean, 3, 1, 0});
    Vec p(3), q(3);
    p << 0.3, -1.0, 2.0;
    q << 1.3, 1.5, -0.5;
    BvpResult r = geodesic_bvp(eu, p, q);
    CHECK(r.distance == doctest::Approx((q - p).norm()).epsilon(1e-10));
}

TEST_CASE("geodesic_bvp: half-plane vertical pair at distance 2") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    BvpResult r = geodesic_bvp(hp, v2(0, 1), v2(0, std::exp(2.0)));
    CHECK(std::abs(r.distance - 2.0) < 1e-7);
    CHECK(r.geodesic.diagnostics.max_residual < 1e-8);
}

TEST_CASE("geodesic_bvp: beltrami radial distance 2 artanh(t/2)") {
    ChartMetric ball = make_model({ModelKind::beltrami_ball, 2, 1, 0});
    for (double t : {0.4, 0.9, 1.5}) {
        BvpResult r = geodesic_bvp(ball, v2(0, 0), v2(t, 0));
        CHECK(std::abs(r.distance - 2.0 * std::atanh(t / 2.0)) < 1e-7);
    }
}

TEST_CASE("geodesic_bvp length does not exceed the chart-line length") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    Vec p = v2(-0.8, 0.9), q = v2(0.7, 1.4);
    BvpResult r = geodesic_bvp(hp, p, q);
    auto line = [=](double t) { return Vec(p + t * (q - p)); };
    auto dline = [=](double) { return Vec(q - p); };
    CurveMeasures straight = curve_measures(hp, CurvePath::analytic(line, dline, 0, 1));
    CHECK(r.distance <= straight.length + 1e-10);
}

TEST_CASE("christoffel accepts lorentzian metrics") {
    auto g = [](const Vec&) {
        Mat m = Mat::Identity(3, 3);
        m(2, 2) = -1;
        return m;
    };
    ChartMetric mink(3, g, nullptr, Signature::lorentzian);
    Vec x(3);
    x << 0.1, 0.2, 0.3;
    CHECK(christoffel(mink, x).max_abs() == 0.0);
}

TEST_CASE("near-antipodal targets set the cut-locus flag") {
    ChartMetric sph = make_model({ModelKind::sphere_stereographic, 2, 1, 0});
    Vec p = v2(0.5, 0.0);
    // the chart antipode of p is -p/|p|^2 = (-2, 0)
    BvpResult near_cut = geodesic_bvp(sph, p, v2(-1.9, 0.02));
    CHECK(near_cut.geodesic.conjugate_flag);
    BvpResult ordinary = geodesic_bvp(sph, p, v2(-1.0, 0.02));
    CHECK_FALSE(ordinary.geodesic.conjugate_flag);
}

TEST_CASE("ivp/bvp consistency away from the cut locus") {
    ChartMetric sph = make_model({ModelKind::sphere_stereographic, 2, 1, 0});
    Vec p = v2(0.2, -0.3), xi = v2(0.9, 0.5);
    double T = 1.3;
    GeodesicSolution fwd = geodesic_ivp(sph, p, xi, T);
    double speed = sph.norm(p, xi);
    BvpResult back = geodesic_bvp(sph, p, fwd.back().position);
    CHECK(std::abs(back.distance - T * speed) < 1e-5);
}

TEST_CASE("geodesics locally minimize energy") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    BvpResult r = geodesic_bvp(hp, v2(-0.5, 1.0), v2(0.8, 1.6));
    const auto& samples = r.geodesic.samples;
    const size_t n = samples.size();

    auto discrete_energy = [&](const std::vector<Vec>& pts, double dt) {
        double e = 0.0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            Vec mid = 0.5 * (pts[i] + pts[i + 1]);
            Vec d = pts[i + 1] - pts[i];
            e += d.dot(hp.metric_raw(mid) * d) / dt;
        }
        return e;
    };
    std::vector<Vec> base;
    for (const auto& s : samples) base.push_back(s.position);
    double e0 = discrete_energy(base, r.geodesic.step);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int rep = 0; rep < 4; ++rep) {
        double a1 = U(rng), a2 = U(rng);
        for (double eps : {1e-3, -1e-3}) {
            std::vector<Vec> pert = base;
            for (size_t i = 0; i < n; ++i) {
                double t = double(i) / double(n - 1);
                double bump = std::sin(M_PI * t);
                pert[i] = base[i] + eps * bump * v2(a1, a2 * std::sin(2 * M_PI * t));
            }
            CHECK(discrete_energy(pert, r.geodesic.step) >= e0 - 1e-8);
        }
    }
}

TEST_CASE("parallel transport is the identity in flat space") {
    ChartMetric eu = make_model({ModelKind::euclidean, 2, 1, 0});
    auto c = [](double t) { return Vec(v2(std::cos(t), std::sin(2 * t))); };
    auto dc = [](double t) { return Vec(v2(-std::sin(t), 2 * std::cos(2 * t))); };
    Vec xi = v2(0.7, -0.4);
    Vec out = parallel_transport(eu, CurvePath::analytic(c, dc, 0, 2), xi);
    CHECK((out - xi).norm() < 1e-12);
}

TEST_CASE("parallel transport around the equator returns the vector") {
    ChartMetric sph = make_model({ModelKind::sphere_stereographic, 2, 1, 0});
    auto c = [](double t) { return Vec(v2(std::cos(t), std::sin(t))); };
    auto dc = [](double t) { return Vec(v2(-std::sin(t), std::cos(t))); };
    CurvePath loop = CurvePath::analytic(c, dc, 0, 2 * M_PI);
    Vec xi = v2(0, 1); // tangent to the equator at (1,0)
    Vec out = parallel_transport(sph, loop, xi);
    CHECK((out - xi).norm() < 1e-6);

    // same loop from uniform samples
    std::vector<Vec> pts;
    for (int i = 0; i <= 2048; ++i) pts.push_back(c(2 * M_PI * i / 2048));
    Vec out2 = parallel_transport(sph, CurvePath::sampled(pts, 2 * M_PI / 2048), xi);
    CHECK((out2 - xi).norm() < 1e-6);
}

TEST_CASE("transport around the octant rotates by a right angle") {
    ChartMetric sph = make_model({ModelKind::sphere_stereographic, 2, 1, 0});
    // chart images of (1,0,0), (0,1,0), (0,0,-1)
    Vec A = v2(1, 0), B = v2(0, 1), C = v2(0, 0);
    Vec xi = v2(0, 1);
    Vec cur = xi;
    for (auto [from, to] : {std::pair{A, B}, {B, C}, {C, A}}) {
        GeodesicSolution side = geodesic_bvp(sph, from, to).geodesic;
        cur = parallel_transport(sph, side.as_curve(), cur);
    }
    Mat g = sph.metric_raw(A);
    double norm0 = std::sqrt(xi.dot(g * xi));
    double norm1 = std::sqrt(cur.dot(g * cur));
    CHECK(std::abs(norm1 - norm0) < 1e-8); // transport preserves length
    double cosang = cur.dot(g * xi) / (norm0 * norm1);
    CHECK(std::abs(std::acos(std::clamp(cosang, -1.0, 1.0)) - M_PI / 2) < 1e-6);
}

TEST_CASE("two parallel fields keep a constant inner product") {
    ChartMetric ball = make_model({ModelKind::beltrami_ball, 2, 1, 0});
    auto c = [](double t) { return Vec(v2(0.8 * std::sin(t), 0.5 * t - 0.3)); };
    auto dc = [](double t) { return Vec(v2(0.8 * std::cos(t), 0.5)); };
    CurvePath path = CurvePath::analytic(c, dc, 0, 1.5);
    Vec X0 = v2(1, 0.2), Y0 = v2(-0.3, 1);
    Vec X1 = parallel_transport(ball, path, X0);
    Vec Y1 = parallel_transport(ball, path, Y0);
    double before = inner_product(ball, c(0), X0, Y0).value;
    double after = inner_product(ball, c(1.5), X1, Y1).value;
    CHECK(std::abs(after - before) < 1e-6);
}
