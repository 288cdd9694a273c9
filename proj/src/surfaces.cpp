#include "diffgeo/surfaces.hpp"

#include <cmath>

namespace diffgeo {

ParametricSurface::ParametricSurface(PosFn S, DomainFn domain, Partials partials)
    : S_(std::move(S)), domain_(std::move(domain)), p_(std::move(partials)) {
    if (!S_) throw std::invalid_argument("ParametricSurface: evaluator required");
    if (!domain_) domain_ = [](double, double) { return true; };
}

Vec3 ParametricSurface::Su(double u, double v) const {
    if (p_.Su) return p_.Su(u, v);
    double h = 1e-5 * (1.0 + std::abs(u));
    return (S_(u + h, v) - S_(u - h, v)) / (2 * h);
}

Vec3 ParametricSurface::Sv(double u, double v) const {
    if (p_.Sv) return p_.Sv(u, v);
    double h = 1e-5 * (1.0 + std::abs(v));
    return (S_(u, v + h) - S_(u, v - h)) / (2 * h);
}

Vec3 ParametricSurface::Suu(double u, double v) const {
    if (p_.Suu) return p_.Suu(u, v);
    double h = 1e-4 * (1.0 + std::abs(u));
    return (S_(u + h, v) - 2.0 * S_(u, v) + S_(u - h, v)) / (h * h);
}

Vec3 ParametricSurface::Svv(double u, double v) const {
    if (p_.Svv) return p_.Svv(u, v);
    double h = 1e-4 * (1.0 + std::abs(v));
    return (S_(u, v + h) - 2.0 * S_(u, v) + S_(u, v - h)) / (h * h);
}

Vec3 ParametricSurface::Suv(double u, double v) const {
    if (p_.Suv) return p_.Suv(u, v);
    double hu = 1e-4 * (1.0 + std::abs(u));
    double hv = 1e-4 * (1.0 + std::abs(v));
    return (S_(u + hu, v + hv) - S_(u + hu, v - hv) - S_(u - hu, v + hv) + S_(u - hu, v - hv)) /
           (4 * hu * hv);
}

FundamentalForms fundamental_forms(const ParametricSurface& S, double u, double v) {
    if (!S.in_domain(u, v))
        throw std::domain_error("fundamental_forms: parameter outside surface domain");
    Vec3 su = S.Su(u, v), sv = S.Sv(u, v);
    Vec3 cr = su.cross(sv);
    double nn = cr.norm();
    if (nn < 1e-12)
        throw std::runtime_error("fundamental_forms: degenerate parameterization (Su x Sv ~ 0)");
    Vec3 n = cr / nn;
    FundamentalForms f;
    f.E = su.dot(su);
    f.F = su.dot(sv);
    f.G = sv.dot(sv);
    f.L = S.Suu(u, v).dot(n);
    f.M = S.Suv(u, v).dot(n);
    f.N = S.Svv(u, v).dot(n);
    f.normal = n;
    return f;
}

namespace {

struct FirstForm {
    double E, F, G;
};

FirstForm first_form(const ParametricSurface& S, double u, double v) {
    Vec3 su = S.Su(u, v), sv = S.Sv(u, v);
    return {su.dot(su), su.dot(sv), sv.dot(sv)};
}

// d(E,F,G)/du and /dv. Analytic in the surface partials:
//   E_u = 2<Suu,Su>, F_u = <Suu,Sv>+<Su,Suv>, G_u = 2<Suv,Sv>, etc.
struct FirstFormDerivs {
    double Eu, Ev, Fu, Fv, Gu, Gv;
};

FirstFormDerivs first_form_derivs(const ParametricSurface& S, double u, double v) {
    Vec3 su = S.Su(u, v), sv = S.Sv(u, v);
    Vec3 suu = S.Suu(u, v), suv = S.Suv(u, v), svv = S.Svv(u, v);
    FirstFormDerivs d;
    d.Eu = 2 * suu.dot(su);
    d.Ev = 2 * suv.dot(su);
    d.Fu = suu.dot(sv) + su.dot(suv);
    d.Fv = suv.dot(sv) + su.dot(svv);
    d.Gu = 2 * suv.dot(sv);
    d.Gv = 2 * svv.dot(sv);
    return d;
}

// Christoffel symbols of the induced metric, from E,F,G and first derivatives.
Tensor3 induced_christoffel(const ParametricSurface& S, double u, double v) {
    FirstForm f = first_form(S, u, v);
    FirstFormDerivs d = first_form_derivs(S, u, v);
    Mat2 g;
    g << f.E, f.F, f.F, f.G;
    Mat2 ginv = g.inverse();
    double dg[2][2][2]; // dg[k][i][j] = d g_ij / d x_k
    dg[0][0][0] = d.Eu;
    dg[0][0][1] = dg[0][1][0] = d.Fu;
    dg[0][1][1] = d.Gu;
    dg[1][0][0] = d.Ev;
    dg[1][0][1] = dg[1][1][0] = d.Fv;
    dg[1][1][1] = d.Gv;
    Tensor3 gam(2);
    for (int h = 0; h < 2; ++h)
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) {
                double s = 0.0;
                for (int a = 0; a < 2; ++a)
                    s += ginv(h, a) * (dg[j][i][a] + dg[i][j][a] - dg[a][j][i]);
                gam(h, i, j) = 0.5 * s;
                gam(h, j, i) = gam(h, i, j);
            }
    return gam;
}

} // namespace

SurfaceCurvatures curvatures(const ParametricSurface& S, double u, double v) {
    FundamentalForms f = fundamental_forms(S, u, v);
    double det1 = f.E * f.G - f.F * f.F;
    SurfaceCurvatures out;
    out.K_extrinsic = (f.L * f.N - f.M * f.M) / det1;
    out.H = (f.E * f.N - 2 * f.F * f.M + f.G * f.L) / (2 * det1);
    double disc = std::max(0.0, out.H * out.H - out.K_extrinsic);
    out.k1 = out.H + std::sqrt(disc);
    out.k2 = out.H - std::sqrt(disc);

    // intrinsic route: K = [ d/du (sqrt(det)/G * Gamma^1_22)
    //                       - d/dv (sqrt(det)/G * Gamma^1_12) ] / sqrt(det)
    auto bracket_A = [&](double uu, double vv) {
        FirstForm ff = first_form(S, uu, vv);
        FirstFormDerivs dd = first_form_derivs(S, uu, vv);
        double det = ff.E * ff.G - ff.F * ff.F;
        double gam122 = (2 * ff.G * dd.Fv - ff.G * dd.Gu - ff.F * dd.Gv) / (2 * det);
        return std::sqrt(det) / ff.G * gam122;
    };
    auto bracket_B = [&](double uu, double vv) {
        FirstForm ff = first_form(S, uu, vv);
        FirstFormDerivs dd = first_form_derivs(S, uu, vv);
        double det = ff.E * ff.G - ff.F * ff.F;
        double gam112 = (ff.G * dd.Ev - ff.F * dd.Gu) / (2 * det);
        return std::sqrt(det) / ff.G * gam112;
    };
    double hu = 1e-4 * (1.0 + std::abs(u));
    double hv = 1e-4 * (1.0 + std::abs(v));
    double dA = (bracket_A(u + hu, v) - bracket_A(u - hu, v)) / (2 * hu);
    double dB = (bracket_B(u, v + hv) - bracket_B(u, v - hv)) / (2 * hv);
    out.K_intrinsic = (dA - dB) / std::sqrt(det1);
    return out;
}

std::pair<double, double> codazzi_residuals(const ParametricSurface& S, double u, double v) {
    auto second_form = [&](double uu, double vv) {
        FundamentalForms f = fundamental_forms(S, uu, vv);
        return Vec3(f.L, f.M, f.N);
    };
    double hu = 1e-4 * (1.0 + std::abs(u));
    double hv = 1e-4 * (1.0 + std::abs(v));
    Vec3 d_du = (second_form(u + hu, v) - second_form(u - hu, v)) / (2 * hu);
    Vec3 d_dv = (second_form(u, v + hv) - second_form(u, v - hv)) / (2 * hv);
    double Lv = d_dv[0], Mu = d_du[1], Mv = d_dv[1], Nu = d_du[2];

    FundamentalForms f = fundamental_forms(S, u, v);
    Tensor3 gam = induced_christoffel(S, u, v);
    double r1 = Lv - Mu -
                (f.L * gam(0, 0, 1) + f.M * (gam(1, 0, 1) - gam(0, 0, 0)) - f.N * gam(1, 0, 0));
    double r2 = Mv - Nu -
                (f.L * gam(0, 1, 1) + f.M * (gam(1, 1, 1) - gam(0, 0, 1)) - f.N * gam(1, 0, 1));
    return {r1, r2};
}

ChartMetric induced_metric(const ParametricSurface& S) {
    auto g = [S](const Vec& x) {
        Vec3 su = S.Su(x[0], x[1]), sv = S.Sv(x[0], x[1]);
        Mat m(2, 2);
        m << su.dot(su), su.dot(sv), su.dot(sv), sv.dot(sv);
        return m;
    };
    auto dg = [S](const Vec& x) {
        FirstFormDerivs d = first_form_derivs(S, x[0], x[1]);
        Mat du(2, 2), dv(2, 2);
        du << d.Eu, d.Fu, d.Fu, d.Gu;
        dv << d.Ev, d.Fv, d.Fv, d.Gv;
        return std::vector<Mat>{du, dv};
    };
    auto dom = [S](const Vec& x) { return S.in_domain(x[0], x[1]); };
    return ChartMetric(2, g, dom, Signature::riemannian, dg);
}

// ---------------------------------------------------------------------------
// built-in surfaces

ParametricSurface make_plane() {
    ParametricSurface::Partials p;
    p.Su = [](double, double) { return Vec3(1, 0, 0); };
    p.Sv = [](double, double) { return Vec3(0, 1, 0); };
    p.Suu = p.Suv = p.Svv = [](double, double) { return Vec3(0, 0, 0); };
    return ParametricSurface([](double u, double v) { return Vec3(u, v, 0); }, nullptr, p);
}

ParametricSurface make_sphere(double R) {
    if (!(R > 0)) throw std::invalid_argument("make_sphere: radius must be positive");
    ParametricSurface::Partials p;
    p.Su = [R](double u, double v) {
        return Vec3(R * std::cos(u) * std::cos(v), R * std::cos(u) * std::sin(v), -R * std::sin(u));
    };
    p.Sv = [R](double u, double v) {
        return Vec3(-R * std::sin(u) * std::sin(v), R * std::sin(u) * std::cos(v), 0);
    };
    p.Suu = [R](double u, double v) {
        return Vec3(-R * std::sin(u) * std::cos(v), -R * std::sin(u) * std::sin(v), -R * std::cos(u));
    };
    p.Suv = [R](double u, double v) {
        return Vec3(-R * std::cos(u) * std::sin(v), R * std::cos(u) * std::cos(v), 0);
    };
    p.Svv = [R](double u, double v) {
        return Vec3(-R * std::sin(u) * std::cos(v), -R * std::sin(u) * std::sin(v), 0);
    };
    auto dom = [](double u, double) { return u > 0.0 && u < M_PI; };
    return ParametricSurface(
        [R](double u, double v) {
            return Vec3(R * std::sin(u) * std::cos(v), R * std::sin(u) * std::sin(v), R * std::cos(u));
        },
        dom, p);
}

ParametricSurface make_cylinder(double r) {
    if (!(r > 0)) throw std::invalid_argument("make_cylinder: radius must be positive");
    ParametricSurface::Partials p;
    p.Su = [r](double u, double) { return Vec3(-r * std::sin(u), r * std::cos(u), 0); };
    p.Sv = [](double, double) { return Vec3(0, 0, 1); };
    p.Suu = [r](double u, double) { return Vec3(-r * std::cos(u), -r * std::sin(u), 0); };
    p.Suv = [](double, double) { return Vec3(0, 0, 0); };
    p.Svv = [](double, double) { return Vec3(0, 0, 0); };
    return ParametricSurface(
        [r](double u, double v) { return Vec3(r * std::cos(u), r * std::sin(u), v); }, nullptr, p);
}

ParametricSurface make_torus(double R0, double r) {
    if (!(R0 > r && r > 0)) throw std::invalid_argument("make_torus: need R0 > r > 0");
    // S(u,v) = ((R0 + r cos u) cos v, (R0 + r cos u) sin v, r sin u)
    ParametricSurface::Partials p;
    p.Su = [=](double u, double v) {
        return Vec3(-r * std::sin(u) * std::cos(v), -r * std::sin(u) * std::sin(v), r * std::cos(u));
    };
    p.Sv = [=](double u, double v) {
        double w = R0 + r * std::cos(u);
        return Vec3(-w * std::sin(v), w * std::cos(v), 0);
    };
    p.Suu = [=](double u, double v) {
        return Vec3(-r * std::cos(u) * std::cos(v), -r * std::cos(u) * std::sin(v), -r * std::sin(u));
    };
    p.Suv = [=](double u, double v) {
        return Vec3(r * std::sin(u) * std::sin(v), -r * std::sin(u) * std::cos(v), 0);
    };
    p.Svv = [=](double u, double v) {
        double w = R0 + r * std::cos(u);
        return Vec3(-w * std::cos(v), -w * std::sin(v), 0);
    };
    return ParametricSurface(
        [=](double u, double v) {
            double w = R0 + r * std::cos(u);
            return Vec3(w * std::cos(v), w * std::sin(v), r * std::sin(u));
        },
        nullptr, p);
}

ParametricSurface make_tractrix_surface(double R) {
    if (!(R > 0)) throw std::invalid_argument("make_tractrix_surface: R must be positive");
    // generating curve: height(u) = R log((R + sqrt(R^2-u^2))/u) - sqrt(R^2-u^2),
    // u = distance from the rotation axis, 0 < u < R. Slope -sqrt(R^2-u^2)/u.
    auto s_of = [R](double u) { return std::sqrt(std::max(0.0, R * R - u * u)); };
    auto h = [R, s_of](double u) {
        double s = s_of(u);
        return R * std::log((R + s) / u) - s;
    };
    auto hp = [s_of](double u) { return -s_of(u) / u; };
    auto hpp = [R, s_of](double u) { return R * R / (s_of(u) * u * u); };

    ParametricSurface::Partials p;
    p.Su = [hp](double u, double v) { return Vec3(std::cos(v), std::sin(v), hp(u)); };
    p.Sv = [](double u, double v) { return Vec3(-u * std::sin(v), u * std::cos(v), 0); };
    p.Suu = [hpp](double u, double) { return Vec3(0, 0, hpp(u)); };
    p.Suv = [](double, double v) { return Vec3(-std::sin(v), std::cos(v), 0); };
    p.Svv = [](double u, double v) { return Vec3(-u * std::cos(v), -u * std::sin(v), 0); };
    auto dom = [R](double u, double) { return u > 0.0 && u < R; };
    return ParametricSurface(
        [h](double u, double v) { return Vec3(u * std::cos(v), u * std::sin(v), h(u)); }, dom, p);
}

ParametricSurface make_graph(const GraphFunction& g) {
    if (!g.f) throw std::invalid_argument("make_graph: height function required");
    ParametricSurface::Partials p;
    if (g.fu) p.Su = [g](double u, double v) { return Vec3(1, 0, g.fu(u, v)); };
    if (g.fv) p.Sv = [g](double u, double v) { return Vec3(0, 1, g.fv(u, v)); };
    if (g.fuu) p.Suu = [g](double u, double v) { return Vec3(0, 0, g.fuu(u, v)); };
    if (g.fuv) p.Suv = [g](double u, double v) { return Vec3(0, 0, g.fuv(u, v)); };
    if (g.fvv) p.Svv = [g](double u, double v) { return Vec3(0, 0, g.fvv(u, v)); };
    auto f = g.f;
    return ParametricSurface([f](double u, double v) { return Vec3(u, v, f(u, v)); }, nullptr, p);
}

} // namespace diffgeo
