#pragma once

#include <string>

#include <json.hpp>

#include "fvol/minkowski.hpp"
#include "fvol/normals.hpp"
#include "fvol/polytope.hpp"

namespace fvol {

using Json = nlohmann::ordered_json;

// 17-significant-digit decimal form, stable across runs
std::string fmt17(double x);

Json vec_to_json(const Vec& v);
Json points_to_json(const std::vector<Vec>& pts);
Vec vec_from_json(const Json& j);
std::vector<Vec> points_from_json(const Json& j, int expected_dim = -1);

// polytope document: {d, normals, h, vertices, facet_areas, volume}
Json polytope_to_json(const HPolytope& hull, const PolytopeGeometry& geo);

// normal-system document: {d, alpha, normals, residual,
// min_pairwise_distance, rank}
Json system_to_json(const UnitNormalSystem& sys);

// Accepts either a normal-system document {d, alpha, normals} or a polytope
// document {d, normals, facet_areas} (the facet areas become the weights).
UnitNormalSystem system_from_json(const Json& j);

}  // namespace fvol
