#include "diffgeo/io.hpp"

#include <ostream>

namespace diffgeo {

std::string canonical_json(const json& j) { return j.dump(); }

void write_geodesic_csv(std::ostream& os, const GeodesicSolution& sol) {
    if (sol.samples.empty()) return;
    const int d = static_cast<int>(sol.samples[0].position.size());
    os << "t";
    for (int i = 1; i <= d; ++i) os << ",x_" << i;
    for (int i = 1; i <= d; ++i) os << ",v_" << i;
    os << ",s\n";
    os.precision(17);
    for (size_t k = 0; k < sol.samples.size(); ++k) {
        const auto& s = sol.samples[k];
        os << s.t;
        for (int i = 0; i < d; ++i) os << "," << s.position[i];
        for (int i = 0; i < d; ++i) os << "," << s.velocity[i];
        os << "," << sol.arc_lengths[k] << "\n";
    }
}

PolyCurve curve_from_json(const json& j) {
    PolyCurve c;
    const json* pts = &j;
    if (j.is_object()) {
        if (j.contains("closed")) c.closed = j.at("closed").get<bool>();
        if (!j.contains("points")) throw std::invalid_argument("curve json: missing \"points\"");
        pts = &j.at("points");
    }
    if (!pts->is_array()) throw std::invalid_argument("curve json: points must be an array");
    for (const auto& row : *pts) {
        if (!row.is_array() || (row.size() != 2 && row.size() != 3))
            throw std::invalid_argument("curve json: each point must be [x,y] or [x,y,z]");
        Vec p(static_cast<int>(row.size()));
        for (size_t i = 0; i < row.size(); ++i) p[static_cast<int>(i)] = row[i].get<double>();
        c.points.push_back(p);
    }
    c.validate();
    return c;
}

json curve_to_json(const PolyCurve& c) {
    json pts = json::array();
    for (const Vec& p : c.points) {
        json row = json::array();
        for (int i = 0; i < p.size(); ++i) row.push_back(p[i]);
        pts.push_back(row);
    }
    return json{{"closed", c.closed}, {"points", pts}};
}

json curvature_report_to_json(const CurvatureReport& rep) {
    const int d = rep.riemann.dim();
    auto tensor4 = [d](const Tensor4& T) {
        json out = json::array();
        for (int i = 0; i < d; ++i) {
            json ji = json::array();
            for (int j = 0; j < d; ++j) {
                json jj = json::array();
                for (int k = 0; k < d; ++k) {
                    json jk = json::array();
                    for (int l = 0; l < d; ++l) jk.push_back(T(i, j, k, l));
                    jj.push_back(jk);
                }
                ji.push_back(jj);
            }
            out.push_back(ji);
        }
        return out;
    };
    json ricci = json::array();
    for (int i = 0; i < d; ++i) {
        json row = json::array();
        for (int j = 0; j < d; ++j) row.push_back(rep.ricci(i, j));
        ricci.push_back(row);
    }
    return json{{"riemann", tensor4(rep.riemann)},
                {"riemann_lowered", tensor4(rep.riemann_lowered)},
                {"ricci", ricci},
                {"scalar", rep.scalar}};
}

} // namespace diffgeo
