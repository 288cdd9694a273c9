#pragma once

#include "diffgeo/connection.hpp"
#include "diffgeo/curvature.hpp"
#include "diffgeo/plane_topology.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace diffgeo {

using json = nlohmann::json;

// Compact dump with sorted keys and round-trip float printing; byte-stable
// for golden-file comparisons.
std::string canonical_json(const json& j);

// CSV columns: t, x_1..x_d, v_1..v_d, s (accumulated arc length).
void write_geodesic_csv(std::ostream& os, const GeodesicSolution& sol);

// {"closed": bool, "points": [[x,y],...]} or a bare [[x,y],...] array.
PolyCurve curve_from_json(const json& j);
json curve_to_json(const PolyCurve& c);

json curvature_report_to_json(const CurvatureReport& rep);

} // namespace diffgeo
