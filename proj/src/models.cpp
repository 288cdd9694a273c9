#include "diffgeo/models.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace diffgeo {

namespace {

// conformal metric g = lambda(x) I with dg[k] = dlambda/dx_k I
ChartMetric conformal_metric(int dim, std::function<double(const Vec&)> lambda,
                             std::function<Vec(const Vec&)> grad_lambda,
                             ChartMetric::DomainFn dom) {
    auto g = [dim, lambda](const Vec& x) { return Mat(lambda(x) * Mat::Identity(dim, dim)); };
    auto dg = [dim, grad_lambda](const Vec& x) {
        Vec gl = grad_lambda(x);
        std::vector<Mat> d(dim);
        for (int k = 0; k < dim; ++k) d[k] = gl[k] * Mat::Identity(dim, dim);
        return d;
    };
    return ChartMetric(dim, g, std::move(dom), Signature::riemannian, dg);
}

} // namespace

ChartMetric make_model(const ModelDescriptor& desc) {
    const int d = desc.dim;
    if (d < 1) throw std::invalid_argument("make_model: dimension must be positive");

    switch (desc.kind) {
    case ModelKind::euclidean: {
        auto g = [d](const Vec&) { return Mat(Mat::Identity(d, d)); };
        auto dg = [d](const Vec&) { return std::vector<Mat>(d, Mat::Zero(d, d)); };
        return ChartMetric(d, g, nullptr, Signature::riemannian, dg);
    }
    case ModelKind::sphere_stereographic: {
        const double R = desc.R;
        if (!(R > 0)) throw std::invalid_argument("make_model: sphere radius must be positive");
        // pullback of the round metric through the stereographic chart:
        // g = 4R^4/(R^2 + |x|^2)^2 I
        auto lam = [R](const Vec& x) {
            double w = R * R + x.squaredNorm();
            return 4 * R * R * R * R / (w * w);
        };
        auto glam = [R](const Vec& x) {
            double w = R * R + x.squaredNorm();
            return Vec(-16 * R * R * R * R / (w * w * w) * x);
        };
        return conformal_metric(d, lam, glam, nullptr);
    }
    case ModelKind::riemann_constant: {
        const double a = desc.alpha;
        auto dom = [a](const Vec& x) { return 1.0 + 0.25 * a * x.squaredNorm() > 0.0; };
        auto lam = [a](const Vec& x) {
            double w = 1.0 + 0.25 * a * x.squaredNorm();
            return 1.0 / (w * w);
        };
        auto glam = [a](const Vec& x) {
            double w = 1.0 + 0.25 * a * x.squaredNorm();
            return Vec(-a / (w * w * w) * x);
        };
        return conformal_metric(d, lam, glam, dom);
    }
    case ModelKind::poincare_half_plane: {
        // ds^2 = sum dx_i^2 / x_d^2 on the half-space x_d > 0
        if (d < 2) throw std::invalid_argument("make_model: half-plane needs dim >= 2");
        auto dom = [d](const Vec& x) { return x[d - 1] > 0.0; };
        auto lam = [d](const Vec& x) { return 1.0 / (x[d - 1] * x[d - 1]); };
        auto glam = [d](const Vec& x) {
            Vec g = Vec::Zero(d);
            g[d - 1] = -2.0 / (x[d - 1] * x[d - 1] * x[d - 1]);
            return g;
        };
        return conformal_metric(d, lam, glam, dom);
    }
    case ModelKind::beltrami_ball: {
        // same formula as riemann_constant(alpha = -1): open ball |x|^2 < 4
        ModelDescriptor rc{ModelKind::riemann_constant, d, 1.0, -1.0};
        return make_model(rc);
    }
    case ModelKind::klein_disk: {
        if (d < 2) throw std::invalid_argument("make_model: klein disk needs dim >= 2");
        // g_ij = ((1-|x|^2) delta_ij + x_i x_j)/(1-|x|^2)^2
        auto dom = [](const Vec& x) { return x.squaredNorm() < 1.0; };
        auto g = [d](const Vec& x) {
            double w = 1.0 - x.squaredNorm();
            Mat m = Mat::Identity(d, d) / w;
            m += x * x.transpose() / (w * w);
            return m;
        };
        auto dg = [d](const Vec& x) {
            double w = 1.0 - x.squaredNorm();
            double w2 = w * w, w3 = w2 * w;
            std::vector<Mat> out(d);
            for (int k = 0; k < d; ++k) {
                Mat m = (2.0 * x[k] / w2) * Mat::Identity(d, d);
                m += (4.0 * x[k] / w3) * (x * x.transpose());
                for (int i = 0; i < d; ++i) {
                    m(i, k) += x[i] / w2;
                    m(k, i) += x[i] / w2;
                }
                out[k] = m;
            }
            return out;
        };
        return ChartMetric(d, g, dom, Signature::riemannian, dg);
    }
    case ModelKind::tractrix_surface: {
        const double R = desc.R;
        if (!(R > 0)) throw std::invalid_argument("make_model: tractrix R must be positive");
        if (d != 2) throw std::invalid_argument("make_model: tractrix surface is 2-dimensional");
        // induced metric of the revolved tractrix: diag(R^2/u^2, u^2), 0 < u < R
        auto dom = [R](const Vec& x) { return x[0] > 0.0 && x[0] < R; };
        auto g = [R](const Vec& x) {
            Mat m = Mat::Zero(2, 2);
            m(0, 0) = R * R / (x[0] * x[0]);
            m(1, 1) = x[0] * x[0];
            return m;
        };
        auto dg = [R](const Vec& x) {
            Mat du = Mat::Zero(2, 2), dv = Mat::Zero(2, 2);
            du(0, 0) = -2 * R * R / (x[0] * x[0] * x[0]);
            du(1, 1) = 2 * x[0];
            return std::vector<Mat>{du, dv};
        };
        return ChartMetric(2, g, dom, Signature::riemannian, dg);
    }
    }
    throw std::invalid_argument("make_model: unknown model kind");
}

std::string model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::euclidean: return "euclidean";
    case ModelKind::sphere_stereographic: return "sphere_stereographic";
    case ModelKind::riemann_constant: return "riemann_constant";
    case ModelKind::poincare_half_plane: return "poincare_half_plane";
    case ModelKind::beltrami_ball: return "beltrami_ball";
    case ModelKind::klein_disk: return "klein_disk";
    case ModelKind::tractrix_surface: return "tractrix_surface";
    }
    return "?";
}

ModelDescriptor parse_model(const std::string& text) {
    static const std::map<std::string, ModelKind> names = {
        {"euclidean", ModelKind::euclidean},
        {"sphere_stereographic", ModelKind::sphere_stereographic},
        {"riemann_constant", ModelKind::riemann_constant},
        {"poincare_half_plane", ModelKind::poincare_half_plane},
        {"beltrami_ball", ModelKind::beltrami_ball},
        {"klein_disk", ModelKind::klein_disk},
        {"tractrix_surface", ModelKind::tractrix_surface},
    };
    std::string name = text;
    std::string params;
    if (auto pos = text.find(':'); pos != std::string::npos) {
        name = text.substr(0, pos);
        params = text.substr(pos + 1);
    }
    auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("unknown model: " + name);
    ModelDescriptor desc;
    desc.kind = it->second;

    std::istringstream ps(params);
    std::string kv;
    while (std::getline(ps, kv, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed model parameter: " + kv);
        std::string key = kv.substr(0, eq);
        double val = std::stod(kv.substr(eq + 1));
        if (key == "R") desc.R = val;
        else if (key == "alpha") desc.alpha = val;
        else if (key == "dim") desc.dim = static_cast<int>(val);
        else throw std::invalid_argument("unknown model parameter: " + key);
    }
    return desc;
}

double cross_ratio(double x1, double x2, double x3, double x4) {
    double den = (x3 - x2) * (x4 - x1);
    if (std::abs(den) < 1e-300)
        throw std::invalid_argument("cross_ratio: coincident points give zero denominator");
    return (x3 - x1) * (x4 - x2) / den;
}

double cross_ratio(const Vec& p1, const Vec& p2, const Vec& p3, const Vec& p4) {
    Vec dir = p4 - p1;
    double len = dir.norm();
    if (len < 1e-300) throw std::invalid_argument("cross_ratio: degenerate point configuration");
    dir /= len;
    auto param = [&](const Vec& p) { return (p - p1).dot(dir); };
    // collinearity check
    for (const Vec* p : {&p2, &p3}) {
        Vec off = (*p - p1) - param(*p) * dir;
        if (off.norm() > 1e-9 * std::max(1.0, len))
            throw std::invalid_argument("cross_ratio: points are not collinear");
    }
    return cross_ratio(param(p1), param(p2), param(p3), param(p4));
}

double klein_distance(const Vec2& P, const Vec2& Q) {
    if (P.squaredNorm() >= 1.0 || Q.squaredNorm() >= 1.0)
        throw std::domain_error("klein_distance: point on or outside the unit disk");
    Vec2 dlt = Q - P;
    double L2 = dlt.squaredNorm();
    if (L2 < 1e-30) return 0.0;

    // chord x(t) = P + t (Q - P); |x(t)|^2 = 1 at t_A < 0 < 1 < t_B
    double a = L2;
    double b = 2.0 * P.dot(dlt);
    double c = P.squaredNorm() - 1.0;
    double disc = b * b - 4 * a * c;
    double sq = std::sqrt(disc);
    // citardauq for the root that would otherwise cancel
    double qq = -0.5 * (b + (b >= 0 ? sq : -sq));
    double r1 = qq / a;
    double r2 = c / qq;
    double tA = std::min(r1, r2), tB = std::max(r1, r2);

    // |AQ| = (1 - tA) |QP|, |BP| = tB |QP|, |AP| = -tA |QP|, |BQ| = (tB - 1) |QP|
    double ratio = ((1.0 - tA) * tB) / ((-tA) * (tB - 1.0));
    return 0.5 * std::abs(std::log(ratio));
}

std::array<double, 6> triangle_law_residuals(const TriangleData& T, TriangleMode mode) {
    if (!(T.a > 0 && T.b > 0 && T.c > 0))
        throw std::invalid_argument("triangle_law_residuals: sides must be positive");
    if (!(T.R > 0)) throw std::invalid_argument("triangle_law_residuals: R must be positive");

    struct Labeled {
        double side, A, B, C; // side opposite A, with sides opposite B, C
        double b, c;
    };
    const std::array<Labeled, 3> cyc = {{
        {T.a, T.A, T.B, T.C, T.b, T.c},
        {T.b, T.B, T.C, T.A, T.c, T.a},
        {T.c, T.C, T.A, T.B, T.a, T.b},
    }};

    std::array<double, 6> r{};
    for (int i = 0; i < 3; ++i) {
        const Labeled& t = cyc[i];
        if (mode == TriangleMode::spherical) {
            r[i] = std::cos(t.A) -
                   (-std::cos(t.B) * std::cos(t.C) +
                    std::sin(t.B) * std::sin(t.C) * std::cos(t.side / T.R));
            r[3 + i] = std::cos(t.side / T.R) -
                       (std::cos(t.b / T.R) * std::cos(t.c / T.R) +
                        std::sin(t.b / T.R) * std::sin(t.c / T.R) * std::cos(t.A));
        } else {
            r[i] = std::cos(t.A) -
                   (-std::cos(t.B) * std::cos(t.C) +
                    std::sin(t.B) * std::sin(t.C) * std::cosh(t.side / T.R));
            r[3 + i] = std::cosh(t.side / T.R) -
                       (std::cosh(t.b / T.R) * std::cosh(t.c / T.R) -
                        std::sinh(t.b / T.R) * std::sinh(t.c / T.R) * std::cos(t.A));
        }
    }
    return r;
}

double excess_defect_check(const TriangleData& T, double area, TriangleMode mode) {
    double angle_sum = T.A + T.B + T.C;
    if (mode == TriangleMode::spherical)
        return std::abs((angle_sum - M_PI) - area / (T.R * T.R));
    return std::abs((M_PI - angle_sum) - area / (T.R * T.R));
}

} // namespace diffgeo
