#include "diffgeo/gauss_bonnet.hpp"
#include "diffgeo/io.hpp"
#include "diffgeo/lorentz.hpp"
#include "diffgeo/quaternion.hpp"
#include "diffgeo/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace diffgeo;

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

Vec to_vec(const std::vector<double>& v) {
    Vec out(static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
    return out;
}

std::uint64_t effective_seed(std::uint64_t config_seed) {
    if (const char* env = std::getenv("GEOM_SEED")) return std::strtoull(env, nullptr, 10);
    return config_seed;
}

void emit(const json& j, const std::string& out_path) {
    std::string text = canonical_json(j);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(out_path, std::ios::binary);
        os << text << "\n";
    }
}

json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open input file: " + path);
    json j;
    is >> j;
    return j;
}

ParametricSurface parse_surface(const std::string& text, double* R_out = nullptr) {
    std::string name = text;
    std::map<std::string, double> kv;
    if (auto pos = text.find(':'); pos != std::string::npos) {
        name = text.substr(0, pos);
        std::istringstream ps(text.substr(pos + 1));
        std::string item;
        while (std::getline(ps, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("malformed surface parameter: " + item);
            kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        }
    }
    auto get = [&](const std::string& key, double dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    };
    if (R_out) *R_out = get("R", 1.0);
    if (name == "plane") return make_plane();
    if (name == "sphere") return make_sphere(get("R", 1.0));
    if (name == "cylinder") return make_cylinder(get("r", 1.0));
    if (name == "torus") return make_torus(get("R0", 2.0), get("r", 1.0));
    if (name == "tractrix") return make_tractrix_surface(get("R", 1.0));
    throw std::runtime_error("unknown surface: " + name);
}

int cmd_geodesic(const std::string& model, const std::string& p_s, const std::string& xi_s,
                 double T, double step, const std::string& out) {
    ChartMetric M = make_model(parse_model(model));
    GeodesicSolution sol = geodesic_ivp(M, to_vec(parse_reals(p_s)), to_vec(parse_reals(xi_s)), T,
                                        step);
    if (out.empty()) {
        write_geodesic_csv(std::cout, sol);
    } else {
        std::ofstream os(out, std::ios::binary);
        write_geodesic_csv(os, sol);
    }
    return sol.domain_exit ? 1 : 0;
}

int cmd_curvature(const std::string& model, const std::string& point, const std::string& out) {
    ChartMetric M = make_model(parse_model(model));
    Vec x = to_vec(parse_reals(point));
    CurvatureReport rep = riemann_at(M, x);
    json j = curvature_report_to_json(rep);
    j["model"] = model;
    emit(j, out);
    return 0;
}

int cmd_triangle(const std::string& model, const std::string& p_s, const std::string& q_s,
                 const std::string& r_s, const std::string& out) {
    ChartMetric M = make_model(parse_model(model));
    GeodesicTriangle T =
        build_triangle(M, to_vec(parse_reals(p_s)), to_vec(parse_reals(q_s)),
                       to_vec(parse_reals(r_s)));
    TriangleReport rep = triangle_report(M, T);
    json j{{"integral", rep.integral},
           {"excess", rep.excess},
           {"holonomy", rep.holonomy_angle},
           {"holonomy_signed", rep.holonomy_signed},
           {"residuals",
            json{{"integral_vs_excess", std::abs(rep.integral - rep.excess)},
                 {"holonomy_vs_excess", std::abs(rep.holonomy_angle - std::abs(rep.excess))}}},
           {"angles", json::array({T.interior_angles[0], T.interior_angles[1],
                                   T.interior_angles[2]})},
           {"sides", json::array({T.sides[0].arc_length, T.sides[1].arc_length,
                                  T.sides[2].arc_length})}};
    emit(j, out);
    return 0;
}

int cmd_surface(const std::string& surface, const std::string& point, bool total, int chi,
                const std::string& out) {
    double R = 1.0;
    ParametricSurface S = parse_surface(surface, &R);
    json j{{"surface", surface}};
    if (total) {
        double u1 = surface.rfind("sphere", 0) == 0 || surface.rfind("tractrix", 0) == 0
                        ? M_PI
                        : 2 * M_PI;
        if (surface.rfind("tractrix", 0) == 0)
            throw std::runtime_error("surface: tractrix does not close up");
        ClosedSurfaceCurvature r = total_curvature_closed(S, 0, u1, 0, 2 * M_PI, chi);
        j["total_curvature"] = r.total;
        j["chi"] = chi;
        j["residual"] = r.residual;
        emit(j, out);
        return r.residual < 1e-4 ? 0 : 1;
    }
    std::vector<double> uv = parse_reals(point);
    if (uv.size() != 2) throw std::runtime_error("surface: --point expects u,v");
    FundamentalForms f = fundamental_forms(S, uv[0], uv[1]);
    SurfaceCurvatures k = curvatures(S, uv[0], uv[1]);
    auto codazzi = codazzi_residuals(S, uv[0], uv[1]);
    j["first_form"] = json{{"E", f.E}, {"F", f.F}, {"G", f.G}};
    j["second_form"] = json{{"L", f.L}, {"M", f.M}, {"N", f.N}};
    j["normal"] = json::array({f.normal.x(), f.normal.y(), f.normal.z()});
    j["K_extrinsic"] = k.K_extrinsic;
    j["K_intrinsic"] = k.K_intrinsic;
    j["principal"] = json::array({k.k1, k.k2});
    j["H"] = k.H;
    j["codazzi_residuals"] = json::array({codazzi.first, codazzi.second});
    emit(j, out);
    return 0;
}

int cmd_topology(const std::string& curve_path, const std::string& out) {
    PolyCurve c = curve_from_json(load_json_file(curve_path));
    // base point for the winding number: the origin, shifted along +x in
    // 1e-3*diagonal steps while it sits on the curve
    Vec2 lo(1e300, 1e300), hi(-1e300, -1e300);
    for (const Vec& p : c.points) {
        lo = lo.cwiseMin(Vec2(p[0], p[1]));
        hi = hi.cwiseMax(Vec2(p[0], p[1]));
    }
    double step = 1e-3 * (hi - lo).norm();
    Vec2 p0(0, 0);
    int w = 0;
    bool w_ok = false;
    for (int shift = 0; shift < 8 && !w_ok; ++shift) {
        try {
            w = winding_number(c, p0);
            w_ok = true;
        } catch (const std::invalid_argument&) {
            p0.x() += step;
        }
    }
    RotationInvariants rot = rotation_invariants(c);
    SignedAreaResult area = signed_area(c);
    SelfIntersections si = self_intersections(c);
    json j{{"winding_origin", w},
           {"winding_point", json::array({p0.x(), p0.y()})},
           {"rotation_number", rot.rotation_number},
           {"total_signed_curvature", rot.total_signed_curvature},
           {"signed_area", area.area},
           {"area_decomposition_residual", area.decomposition_residual},
           {"self_intersections", si.count}};
    if (!w_ok) j["winding_origin"] = nullptr;
    emit(j, out);
    return 0;
}

int cmd_linking(const std::string& c1_path, const std::string& c2_path, const std::string& out) {
    PolyCurve c1 = curve_from_json(load_json_file(c1_path));
    PolyCurve c2 = curve_from_json(load_json_file(c2_path));
    LinkingResult r = linking_number(c1, c2);
    emit(json{{"m", r.m},
              {"raw_integral", r.raw_integral},
              {"raw_over_4pi", r.raw_integral / (4 * M_PI)}},
         out);
    return 0;
}

int cmd_quaternion(const std::string& out) {
    std::vector<Quaternion> G = binary_icosahedral();
    auto member = [&](const Quaternion& q) {
        for (const auto& g : G) {
            double d2 = (g.a - q.a) * (g.a - q.a) + (g.b - q.b) * (g.b - q.b) +
                        (g.c - q.c) * (g.c - q.c) + (g.d - q.d) * (g.d - q.d);
            if (d2 < 1e-18) return true;
        }
        return false;
    };
    bool closed = true;
    for (const auto& p : G) {
        for (const auto& q : G)
            if (!member(qmul(p, q))) {
                closed = false;
                break;
            }
        if (!closed) break;
    }
    std::vector<Mat3> images;
    for (const auto& g : G) {
        Mat3 A = rotation_matrix(g);
        bool seen = false;
        for (const Mat3& B : images)
            if ((A - B).cwiseAbs().maxCoeff() < 1e-9) {
                seen = true;
                break;
            }
        if (!seen) images.push_back(A);
    }
    emit(json{{"group_order", G.size()},
              {"closed_under_product", closed},
              {"so3_image_size", images.size()}},
         out);
    return (G.size() == 120 && closed && images.size() == 60) ? 0 : 1;
}

int cmd_lorentz(const std::string& v_s, double c, const std::string& event_s,
                const std::string& out) {
    std::vector<double> vv = parse_reals(v_s);
    if (vv.size() != 3) throw std::runtime_error("lorentz: --v expects vx,vy,vz");
    std::vector<double> ev = parse_reals(event_s);
    if (ev.size() != 4) throw std::runtime_error("lorentz: --event expects x,y,z,t");
    Boost B = Boost::from_velocity(Vec3(vv[0], vv[1], vv[2]), c);
    Event e{Vec3(ev[0], ev[1], ev[2]), ev[3]};
    Event img = B.apply(e);
    json A = json::array();
    for (int i = 0; i < 3; ++i)
        A.push_back(json::array({B.A()(i, 0), B.A()(i, 1), B.A()(i, 2)}));
    emit(json{{"A", A},
              {"gamma", B.gamma()},
              {"event", json::array({e.x.x(), e.x.y(), e.x.z(), e.t})},
              {"image", json::array({img.x.x(), img.x.y(), img.x.z(), img.t})},
              {"interval_from_origin", minkowski_interval({}, e, c)},
              {"interval_image", minkowski_interval(B.apply({}), img, c)}},
         out);
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
    std::vector<int> ids;
    if (!suite.empty() && suite != "all") {
        std::istringstream is(suite);
        std::string tok;
        while (std::getline(is, tok, ',')) ids.push_back(std::stoi(tok));
    }
    std::uint64_t used_seed = effective_seed(seed);
    std::vector<CriterionResult> results = run_verification(ids, used_seed);
    json arr = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        std::cerr << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  (worst "
                  << r.worst << ", tol " << r.tolerance << ")"
                  << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
        all_pass &= r.pass;
        arr.push_back(json{{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"worst", r.worst},
                           {"tolerance", r.tolerance},
                           {"detail", r.detail}});
    }
    emit(json{{"criteria", arr}, {"all_pass", all_pass}, {"seed", used_seed}}, out);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical differential-geometry toolkit"};
    app.require_subcommand(1);

    std::string model = "euclidean", p_s = "0,0", q_s, r_s, xi_s = "1,0", out, curve_path,
                curve2_path, surface = "sphere:R=1", point = "0,0", event_s = "0,0,0,0",
                v_s = "0,0,0", suite = "all";
    double T = 1.0, step = 0.0, light_c = 1.0;
    std::uint64_t seed = 42;
    bool total = false;
    int chi = 2;

    auto* g = app.add_subcommand("geodesic", "trace a geodesic (CSV: t,x_i,v_i,s)");
    g->add_option("--model", model)->required();
    g->add_option("--p", p_s)->required();
    g->add_option("--xi", xi_s)->required();
    g->add_option("--T", T)->required();
    g->add_option("--step", step);
    g->add_option("--out", out);

    auto* cv = app.add_subcommand("curvature", "curvature tensor report (JSON)");
    cv->add_option("--model", model)->required();
    cv->add_option("--point", point)->required();
    cv->add_option("--out", out);

    auto* tr = app.add_subcommand("triangle", "geodesic triangle report (JSON)");
    tr->add_option("--model", model)->required();
    tr->add_option("--p", p_s)->required();
    tr->add_option("--q", q_s)->required();
    tr->add_option("--r", r_s)->required();
    tr->add_option("--out", out);

    auto* sf = app.add_subcommand("surface", "fundamental forms and curvatures (JSON)");
    sf->add_option("--surface", surface)->required();
    sf->add_option("--point", point);
    sf->add_flag("--total-curvature", total, "integrate K over the closed surface");
    sf->add_option("--chi", chi, "Euler characteristic for --total-curvature");
    sf->add_option("--out", out);

    auto* tp = app.add_subcommand("topology", "plane-curve invariants (JSON)");
    tp->add_option("--curve", curve_path)->required();
    tp->add_option("--out", out);

    auto* lk = app.add_subcommand("linking", "Gauss linking number of two space curves (JSON)");
    lk->add_option("--curve1", curve_path)->required();
    lk->add_option("--curve2", curve2_path)->required();
    lk->add_option("--out", out);

    auto* qt = app.add_subcommand("quaternion", "binary icosahedral group checks (JSON)");
    qt->add_option("--out", out);

    auto* lz = app.add_subcommand("lorentz", "apply a pure boost to an event (JSON)");
    lz->add_option("--v", v_s)->required();
    lz->add_option("--c", light_c);
    lz->add_option("--event", event_s)->required();
    lz->add_option("--out", out);

    auto* vf = app.add_subcommand("verify", "run the verification suite");
    vf->add_option("--suite", suite, "all, or comma-separated criterion ids");
    vf->add_option("--seed", seed);
    vf->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed()) return cmd_geodesic(model, p_s, xi_s, T, step, out);
        if (cv->parsed()) return cmd_curvature(model, point, out);
        if (tr->parsed()) return cmd_triangle(model, p_s, q_s, r_s, out);
        if (sf->parsed()) return cmd_surface(surface, point, total, chi, out);
        if (tp->parsed()) return cmd_topology(curve_path, out);
        if (lk->parsed()) return cmd_linking(curve_path, curve2_path, out);
        if (qt->parsed()) return cmd_quaternion(out);
        if (lz->parsed()) return cmd_lorentz(v_s, light_c, event_s, out);
        if (vf->parsed()) return cmd_verify(suite, seed, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
