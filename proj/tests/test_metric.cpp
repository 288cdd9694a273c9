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

TEST_CASE("metric_at on the built-in models") {
    ChartMetric eu = make_model({ModelKind::euclidean, 2, 1, 0});
    Mat g = eu.metric_at(v2(3, 7));
    CHECK(g.isApprox(Mat::Identity(2, 2)));

    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    Mat ghp = hp.metric_at(v2(0, 2));
    CHECK(ghp(0, 0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(ghp(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(ghp(0, 1) == 0.0);

    ChartMetric ball = make_model({ModelKind::beltrami_ball, 3, 1, 0});
    Vec origin = Vec::Zero(3);
    CHECK(ball.metric_at(origin).isApprox(Mat::Identity(3, 3)));
}

TEST_CASE("metric_at output is exactly symmetric") {
    // deliberately asymmetric evaluator within tolerance
    auto g = [](const Vec&) {
        Mat m(2, 2);
        m << 2.0, 1.0 + 5e-13, 1.0, 3.0;
        return m;
    };
    ChartMetric M(2, g, nullptr);
    Mat out = M.metric_at(v2(0, 0));
    CHECK(out(0, 1) == out(1, 0));
}

TEST_CASE("metric_at error paths") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    CHECK_THROWS_AS(hp.metric_at(v2(0, -1)), std::domain_error);

    auto asym = [](const Vec&) {
        Mat m(2, 2);
        m << 1, 0.5, 0.2, 1;
        return m;
    };
    ChartMetric bad(2, asym, nullptr);
    CHECK_THROWS_AS(bad.metric_at(v2(0, 0)), std::runtime_error);

    auto indef = [](const Vec&) {
        Mat m(2, 2);
        m << 1, 0, 0, -1;
        return m;
    };
    ChartMetric claimed_riemannian(2, indef, nullptr);
    CHECK_THROWS_AS(claimed_riemannian.metric_at(v2(0, 0)), std::runtime_error);
    ChartMetric lorentzian(2, indef, nullptr, Signature::lorentzian);
    CHECK_NOTHROW(lorentzian.metric_at(v2(0, 0)));
}

TEST_CASE("curve_measures: euclidean segment") {
    ChartMetric eu = make_model({ModelKind::euclidean, 2, 1, 0});
    auto c = [](double t) {
        Vec p(2);
        p << 3 * t, 4 * t;
        return p;
    };
    auto dc = [](double) {
        Vec p(2);
        p << 3, 4;
        return p;
    };
    CurveMeasures m = curve_measures(eu, CurvePath::analytic(c, dc, 0, 1));
    CHECK(m.length == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(m.energy == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("curve_measures: half-plane vertical segment has unit length") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    // arc-length parameterization (0, e^t), t in [0,1]
    auto c = [](double t) { return Vec(v2(0, std::exp(t))); };
    auto dc = [](double t) { return Vec(v2(0, std::exp(t))); };
    CurveMeasures m = curve_measures(hp, CurvePath::analytic(c, dc, 0, 1));
    CHECK(m.length == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.energy == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("curve_measures: geodesic samples fed back give the quarter arc") {
    ChartMetric sph = make_model({ModelKind::sphere_stereographic, 2, 1.0, 0});
    GeodesicSolution geo = geodesic_ivp(sph, v2(1, 0), v2(0, 1), M_PI / 2);
    std::vector<Vec> pts;
    for (const auto& s : geo.samples) pts.push_back(s.position);
    CurveMeasures m = curve_measures(sph, CurvePath::sampled(pts, geo.step));
    CHECK(std::abs(m.length - M_PI / 2) < 1e-6);
}

TEST_CASE("curve_measures rejects lorentzian metrics") {
    auto g = [](const Vec&) {
        Mat m(2, 2);
        m << 1, 0, 0, -1;
        return m;
    };
    ChartMetric lor(2, g, nullptr, Signature::lorentzian);
    auto c = [](double t) { return Vec(v2(t, 0)); };
    auto dc = [](double) { return Vec(v2(1, 0)); };
    CHECK_THROWS_AS(curve_measures(lor, CurvePath::analytic(c, dc, 0, 1)),
                    std::invalid_argument);
}

TEST_CASE("curve_measures errors when the curve leaves the chart") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    auto c = [](double t) { return Vec(v2(t, 1 - t)); };
    auto dc = [](double) { return Vec(v2(1, -1)); };
    CHECK_THROWS_AS(curve_measures(hp, CurvePath::analytic(c, dc, 0, 2)), std::domain_error);
}

TEST_CASE("length is reparameterization invariant, energy is not") {
    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    auto c = [](double t) { return Vec(v2(std::sin(t), 1.5 + 0.5 * std::cos(t))); };
    auto dc = [](double t) { return Vec(v2(std::cos(t), -0.5 * std::sin(t))); };
    CurveMeasures base = curve_measures(hp, CurvePath::analytic(c, dc, 0, 2));

    // phi(s) = 4s^2 - 2s^3, increasing on [0,1] with phi(1) = 2
    auto phi = [](double s) { return 2 * s * s * (2 - s); };
    auto dphi = [](double s) { return 2 * (4 * s - 3 * s * s); };
    auto cr = [&](double s) { return c(phi(s)); };
    auto dcr = [&](double s) { return Vec(dc(phi(s)) * dphi(s)); };
    CurveMeasures rep = curve_measures(hp, CurvePath::analytic(cr, dcr, 0, 1));

    CHECK(std::abs(rep.length - base.length) < 1e-8 * base.length);
    CHECK(std::abs(rep.energy - base.energy) > 1e-3);
}

TEST_CASE("inner_product values and angle") {
    ChartMetric eu = make_model({ModelKind::euclidean, 2, 1, 0});
    auto ip = inner_product(eu, v2(0, 0), v2(1, 0), v2(0, 1));
    CHECK(ip.value == 0.0);
    CHECK(ip.angle.has_value());
    CHECK(*ip.angle == doctest::Approx(M_PI / 2));

    ChartMetric hp = make_model({ModelKind::poincare_half_plane, 2, 1, 0});
    auto ip2 = inner_product(hp, v2(0, 2), v2(1, 0), v2(1, 0));
    CHECK(ip2.value == doctest::Approx(0.25).epsilon(1e-14));

    auto ip3 = inner_product(hp, v2(0, 2), v2(0, 0), v2(1, 0));
    CHECK(ip3.value == 0.0);
    CHECK_FALSE(ip3.angle.has_value());

    CHECK_THROWS_AS(inner_product(hp, v2(0, -2), v2(1, 0), v2(1, 0)), std::domain_error);
}

TEST_CASE("triangle inequality for geodesic distance in the model spaces") {
    std::mt19937_64 rng(7);
    auto pick = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    struct Case {
        ChartMetric M;
        std::function<Vec()> sample;
    };
    std::vector<Case> cases;
    cases.push_back({make_model({ModelKind::poincare_half_plane, 2, 1, 0}),
                     [&] { return v2(pick(-1, 1), pick(0.7, 2.0)); }});
    cases.push_back({make_model({ModelKind::sphere_stereographic, 2, 1, 0}),
                     [&] { return v2(pick(-0.8, 0.8), pick(-0.8, 0.8)); }});
    cases.push_back({make_model({ModelKind::beltrami_ball, 2, 1, 0}),
                     [&] { return v2(pick(-0.8, 0.8), pick(-0.8, 0.8)); }});
    for (auto& cs : cases) {
        for (int rep = 0; rep < 3; ++rep) {
            Vec p = cs.sample(), q = cs.sample(), r = cs.sample();
            double pq = geodesic_bvp(cs.M, p, q).distance;
            double qr = geodesic_bvp(cs.M, q, r).distance;
            double pr = geodesic_bvp(cs.M, p, r).distance;
            CHECK(pr <= pq + qr + 1e-6);
        }
    }
}
