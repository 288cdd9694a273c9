#include "diffgeo/curvature.hpp"
#include "diffgeo/surfaces.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace diffgeo;

TEST_CASE("fundamental forms of the plane and the sphere") {
    ParametricSurface plane = make_plane();
    FundamentalForms f = fundamental_forms(plane, 0.3, -0.7);
    CHECK(f.E == 1.0);
    CHECK(f.G == 1.0);
    CHECK(f.F == 0.0);
    CHECK(f.L == 0.0);
    CHECK(f.M == 0.0);
    CHECK(f.N == 0.0);

    double R = 1.7;
    ParametricSurface sph = make_sphere(R);
    FundamentalForms fs = fundamental_forms(sph, M_PI / 2, 0.4); // equator
    CHECK(fs.E == doctest::Approx(R * R).epsilon(1e-12));
    CHECK(fs.G == doctest::Approx(R * R).epsilon(1e-12));
    CHECK(fs.F == doctest::Approx(0.0));
    CHECK(std::abs(fs.L) == doctest::Approx(R).epsilon(1e-10));
    CHECK(std::abs(fs.N) == doctest::Approx(R).epsilon(1e-10));
    CHECK(fs.M == doctest::Approx(0.0));
    CHECK(fs.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("graph surface at a critical point: second form = hessian") {
    GraphFunction g;
    double a = 0.8, b = -0.3, c = 1.2;
    g.f = [=](double u, double v) { return 0.5 * (a * u * u + 2 * b * u * v + c * v * v); };
    g.fu = [=](double u, double v) { return a * u + b * v; };
    g.fv = [=](double u, double v) { return b * u + c * v; };
    g.fuu = [=](double, double) { return a; };
    g.fuv = [=](double, double) { return b; };
    g.fvv = [=](double, double) { return c; };
    FundamentalForms f = fundamental_forms(make_graph(g), 0.0, 0.0);
    CHECK(f.L == doctest::Approx(a).epsilon(1e-12));
    CHECK(f.M == doctest::Approx(b).epsilon(1e-12));
    CHECK(f.N == doctest::Approx(c).epsilon(1e-12));
    SurfaceCurvatures k = curvatures(make_graph(g), 0.0, 0.0);
    CHECK(k.K_extrinsic == doctest::Approx(a * c - b * b).epsilon(1e-10));
    CHECK(k.H == doctest::Approx(0.5 * (a + c)).epsilon(1e-10));
}

TEST_CASE("degenerate parameterization is rejected") {
    ParametricSurface bad([](double u, double v) { return Vec3(u + v, u + v, 0); });
    CHECK_THROWS_AS(fundamental_forms(bad, 0, 0), std::runtime_error);
}

TEST_CASE("curvatures of sphere, cylinder, tractrix surface") {
    double R = 2.0;
    SurfaceCurvatures ks = curvatures(make_sphere(R), 1.0, 0.5);
    CHECK(ks.K_extrinsic == doctest::Approx(1.0 / (R * R)).epsilon(1e-9));
    CHECK(ks.K_intrinsic == doctest::Approx(1.0 / (R * R)).epsilon(1e-6));
    CHECK(std::abs(ks.H) == doctest::Approx(1.0 / R).epsilon(1e-9));
    CHECK(ks.K_extrinsic ==
          doctest::Approx(ks.k1 * ks.k2).epsilon(1e-8)); // det of the shape matrix

    double r = 0.7;
    SurfaceCurvatures kc = curvatures(make_cylinder(r), 0.9, -0.3);
    CHECK(kc.K_extrinsic == doctest::Approx(0.0));
    CHECK(std::abs(kc.K_intrinsic) < 1e-9);
    CHECK(std::abs(kc.H) == doctest::Approx(1.0 / (2 * r)).epsilon(1e-9));

    for (double Rt : {1.0, 1.6}) {
        ParametricSurface tr = make_tractrix_surface(Rt);
        for (double u : {0.25 * Rt, 0.5 * Rt, 0.85 * Rt}) {
            SurfaceCurvatures kt = curvatures(tr, u, 1.1);
            CHECK(kt.K_extrinsic == doctest::Approx(-1.0 / (Rt * Rt)).epsilon(1e-8));
            CHECK(kt.K_intrinsic == doctest::Approx(-1.0 / (Rt * Rt)).epsilon(1e-5));
        }
    }
}

TEST_CASE("theorema egregium spot checks") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(0.3, 5.5);
    ParametricSurface torus = make_torus(2.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        double u = U(rng), v = U(rng);
        SurfaceCurvatures k = curvatures(torus, u, v);
        CHECK(std::abs(k.K_intrinsic - k.K_extrinsic) < 1e-5);
    }
}

TEST_CASE("codazzi residuals vanish on genuine surfaces") {
    auto near_zero = [](std::pair<double, double> r, double tol) {
        return std::abs(r.first) < tol && std::abs(r.second) < tol;
    };
    CHECK(near_zero(codazzi_residuals(make_plane(), 0.2, 0.4), 1e-12));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(0.5, 5.0);
    ParametricSurface torus = make_torus(2.0, 1.0);
    for (int i = 0; i < 10; ++i)
        CHECK(near_zero(codazzi_residuals(torus, U(rng), U(rng)), 1e-5));
    ParametricSurface sph = make_sphere(1.0);
    for (int i = 0; i < 10; ++i)
        CHECK(near_zero(codazzi_residuals(sph, 0.3 + 0.5 * U(rng) / 5.0, U(rng)), 1e-6));
}

TEST_CASE("induced metric matches the first form") {
    ChartMetric plane_m = induced_metric(make_plane());
    Vec x(2);
    x << 0.3, -0.8;
    CHECK(plane_m.metric_at(x).isApprox(Mat::Identity(2, 2)));

    double R = 1.4;
    ChartMetric sph_m = induced_metric(make_sphere(R));
    Vec p(2);
    p << 0.9, 2.0;
    Mat g = sph_m.metric_at(p);
    CHECK(g(0, 0) == doctest::Approx(R * R).epsilon(1e-10));
    CHECK(g(1, 1) == doctest::Approx(R * R * std::sin(0.9) * std::sin(0.9)).epsilon(1e-10));
    CHECK(g(0, 1) == doctest::Approx(0.0));

    // tractrix induced metric has sectional curvature -1/R^2
    double Rt = 1.3;
    ChartMetric tr_m = induced_metric(make_tractrix_surface(Rt));
    Vec q(2);
    q << 0.6 * Rt, 0.8;
    Vec e1(2), e2(2);
    e1 << 1, 0;
    e2 << 0, 1;
    CHECK(sectional(tr_m, q, e1, e2) == doctest::Approx(-1.0 / (Rt * Rt)).epsilon(1e-5));
}

TEST_CASE("surface element reproduces closed-form patch areas") {
    // Simpson quadrature of sqrt(EG - F^2) du dv as the independent check
    auto patch_area = [](const ParametricSurface& S, double u0, double u1, double v0, double v1) {
        const int n = 64;
        double hu = (u1 - u0) / n, hv = (v1 - v0) / n;
        double sum = 0.0;
        auto w = [n](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                FundamentalForms f = fundamental_forms(S, u0 + i * hu, v0 + j * hv);
                sum += w(i) * w(j) * std::sqrt(f.E * f.G - f.F * f.F);
            }
        return sum * hu * hv / 9.0;
    };
    double R = 1.3;
    double a = patch_area(make_sphere(R), 0.3, 1.2, 0.0, 1.0);
    double expect = R * R * (std::cos(0.3) - std::cos(1.2)) * 1.0;
    CHECK(std::abs(a - expect) < 1e-6 * expect);

    double r = 0.8;
    double band = patch_area(make_cylinder(r), 0.0, 2.0, -0.5, 1.5);
    CHECK(std::abs(band - r * 2.0 * 2.0) < 1e-6 * band);
}

TEST_CASE("flipping the normal negates the second form and H, fixes K") {
    ParametricSurface torus = make_torus(2.0, 1.0);
    // swapping the parameters reverses Su x Sv
    ParametricSurface swapped(
        [&torus](double u, double v) { return torus.eval(v, u); });
    double u = 0.8, v = 2.3;
    FundamentalForms f1 = fundamental_forms(torus, u, v);
    FundamentalForms f2 = fundamental_forms(swapped, v, u);
    CHECK((f1.normal + f2.normal).norm() < 1e-6);
    CHECK(f2.L == doctest::Approx(-f1.N).epsilon(1e-5)); // roles of u,v swap too
    SurfaceCurvatures k1 = curvatures(torus, u, v);
    SurfaceCurvatures k2 = curvatures(swapped, v, u);
    CHECK(k2.K_extrinsic == doctest::Approx(k1.K_extrinsic).epsilon(1e-5));
    CHECK(k2.H == doctest::Approx(-k1.H).epsilon(1e-4));
    CHECK(k2.k1 == doctest::Approx(-k1.k2).epsilon(1e-4));
}
