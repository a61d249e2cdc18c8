#include "fvol/io.hpp"

#include <cstdio>

namespace fvol {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json vec_to_json(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Json points_to_json(const std::vector<Vec>& pts) {
  Json arr = Json::array();
  for (const Vec& p : pts) arr.push_back(vec_to_json(p));
  return arr;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error("json: expected an array of numbers");
  Vec v(j.size());
  int i = 0;
  for (const auto& x : j) v[i++] = x.get<double>();
  return v;
}

std::vector<Vec> points_from_json(const Json& j, int expected_dim) {
  if (!j.is_array()) throw Error("json: expected an array of points");
  std::vector<Vec> pts;
  pts.reserve(j.size());
  for (const auto& row : j) {
    Vec p = vec_from_json(row);
    if (expected_dim >= 0 && p.size() != expected_dim)
      throw Error("json: point dimension mismatch");
    pts.push_back(std::move(p));
  }
  return pts;
}

Json polytope_to_json(const HPolytope& hull, const PolytopeGeometry& geo) {
  Json j;
  j["d"] = hull.ambient_dim;
  j["normals"] = points_to_json(hull.normals);
  j["h"] = vec_to_json(hull.offsets);
  j["vertices"] = points_to_json(geo.vertices.vertices);
  j["facet_areas"] = vec_to_json(geo.facet_areas);
  j["volume"] = geo.volume;
  return j;
}

Json system_to_json(const UnitNormalSystem& sys) {
  const SystemDiagnostics diag = system_diagnostics(sys);
  Json j;
  j["d"] = sys.dim;
  j["alpha"] = vec_to_json(sys.weights);
  j["normals"] = points_to_json(sys.normals);
  j["residual"] = diag.residual;
  j["min_pairwise_distance"] = diag.min_pairwise_distance;
  j["rank"] = diag.rank;
  return j;
}

UnitNormalSystem system_from_json(const Json& j) {
  if (!j.contains("d") || !j.contains("normals"))
    throw Error("json: normal system needs 'd' and 'normals'");
  UnitNormalSystem sys;
  sys.dim = j.at("d").get<int>();
  sys.normals = points_from_json(j.at("normals"), sys.dim);
  if (j.contains("alpha"))
    sys.weights = vec_from_json(j.at("alpha"));
  else if (j.contains("facet_areas"))
    sys.weights = vec_from_json(j.at("facet_areas"));
  else
    throw Error("json: normal system needs 'alpha' or 'facet_areas'");
  if (sys.weights.size() != static_cast<int>(sys.normals.size()))
    throw Error("json: weight/normal count mismatch");
  return sys;
}

}  // namespace fvol
