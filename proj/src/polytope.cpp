#include "fvol/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fvol {

namespace {

struct NormalizedH {
  int dim = 0;
  std::vector<Vec> units;  // unit normals
  Vec offsets;             // offsets in distance units
};

NormalizedH normalize_halfspaces(const HPolytope& h) {
  const int d = h.ambient_dim;
  const int n = static_cast<int>(h.normals.size());
  if (n != h.offsets.size())
    throw DimensionMismatch("halfspaces: normals/offsets count mismatch");
  NormalizedH out;
  out.dim = d;
  out.offsets.resize(n);
  out.units.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(h.normals[i].size()) != d)
      throw DimensionMismatch("halfspaces: normal dimension mismatch");
    const double nn = h.normals[i].norm();
    if (nn <= 0.0)
      throw DimensionMismatch("halfspaces: zero normal vector");
    out.units.push_back(h.normals[i] / nn);
    out.offsets[i] = h.offsets[i] / nn;
  }
  return out;
}

Vec centroid(const std::vector<Vec>& pts) {
  Vec c = Vec::Zero(pts.front().size());
  for (const Vec& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

// visit all k-subsets of {0..n-1}
template <class F>
void for_each_subset(int n, int k, F&& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) return;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

struct FaceContext {
  const std::vector<char>* incidence;  // incidence[i][j]: vertex j on plane i
  int num_planes = 0;
  int num_vertices = 0;

  bool on(int plane, int vertex) const {
    return incidence[plane][vertex] != 0;
  }
};

// Volume of the face with global vertex ids `ids` (sorted) whose local
// k-dimensional coordinates are `pts`. Sub-faces are recovered by filtering
// against the global vertex/constraint incidence, so the recursion needs no
// separate convex-hull structure: every proper face of a face arises as the
// face intersected with one more constraint plane.
double face_volume_rec(const FaceContext& ctx, const std::vector<int>& ids,
                       const std::vector<Vec>& pts, int k) {
  if (static_cast<int>(pts.size()) < k + 1) return 0.0;
  if (k == 0) return 1.0;
  if (k == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const Vec& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }

  Vec g = centroid(pts);
  std::set<std::vector<int>> seen;
  double total = 0.0;
  for (int j = 0; j < ctx.num_planes; ++j) {
    std::vector<int> sub_ids;
    std::vector<int> sub_pos;
    for (size_t t = 0; t < ids.size(); ++t) {
      if (ctx.on(j, ids[t])) {
        sub_ids.push_back(ids[t]);
        sub_pos.push_back(static_cast<int>(t));
      }
    }
    if (sub_ids.size() == ids.size()) continue;  // plane contains this face
    if (static_cast<int>(sub_ids.size()) < k) continue;
    if (!seen.insert(sub_ids).second) continue;

    // affine hull of the sub-face: last left singular vector is its in-face
    // normal, the leading ones its local coordinate frame
    Mat m(k, sub_ids.size() - 1);
    const Vec& origin = pts[sub_pos[0]];
    for (size_t c = 1; c < sub_pos.size(); ++c)
      m.col(c - 1) = pts[sub_pos[c]] - origin;
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
    const Vec normal = svd.matrixU().col(k - 1);
    const double dist = std::abs(normal.dot(g - origin));

    const Mat frame = svd.matrixU().leftCols(k - 1);
    std::vector<Vec> sub_pts;
    sub_pts.reserve(sub_pos.size());
    for (int p : sub_pos)
      sub_pts.push_back(frame.transpose() * (pts[p] - origin));
    total += dist * face_volume_rec(ctx, sub_ids, sub_pts, k - 1);
  }
  return total / k;
}

}  // namespace

VPolytope make_vpolytope(int ambient_dim, std::vector<Vec> vertices,
                         bool enforce_irredundant, double tol) {
  for (const Vec& v : vertices)
    if (static_cast<int>(v.size()) != ambient_dim)
      throw DimensionMismatch("vpolytope: vertex dimension mismatch");

  double scale = 1.0;
  for (const Vec& v : vertices) scale = std::max(scale, v.norm());

  // drop near-duplicates, keeping the first representative
  std::vector<Vec> unique;
  for (const Vec& v : vertices) {
    bool dup = false;
    for (const Vec& u : unique)
      if ((u - v).norm() <= tol * scale) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(v);
  }

  if (enforce_irredundant) {
    std::vector<char> keep(unique.size(), 1);
    for (size_t i = 0; i < unique.size(); ++i) {
      // can vertex i be written as a convex combination of the others?
      std::vector<int> others;
      for (size_t j = 0; j < unique.size(); ++j)
        if (j != i && keep[j]) others.push_back(static_cast<int>(j));
      if (static_cast<int>(others.size()) < 1) continue;
      Mat a(ambient_dim + 1, others.size());
      for (size_t c = 0; c < others.size(); ++c) {
        a.col(c).head(ambient_dim) = unique[others[c]];
        a(ambient_dim, c) = 1.0;
      }
      Vec b(ambient_dim + 1);
      b.head(ambient_dim) = unique[i];
      b[ambient_dim] = 1.0;
      if (nnls(a, b).residual <= tol * scale) keep[i] = 0;
    }
    std::vector<Vec> kept;
    for (size_t i = 0; i < unique.size(); ++i)
      if (keep[i]) kept.push_back(unique[i]);
    unique = std::move(kept);
  }

  if (static_cast<int>(unique.size()) < ambient_dim + 1)
    throw DegenerateGeometry("vpolytope: fewer than dim+1 extreme points");
  return {ambient_dim, std::move(unique)};
}

VPolytope enumerate_vertices(const HPolytope& h) {
  const NormalizedH nh = normalize_halfspaces(h);
  const int d = nh.dim;
  const int n = static_cast<int>(nh.units.size());
  if (n < d + 1)
    throw UnboundedPolytope("enumerate: fewer than d+1 halfspaces");
  if (!positively_spans(nh.units, d))
    throw UnboundedPolytope("enumerate: normals do not positively span");

  const double href = std::max(1.0, nh.offsets.cwiseAbs().maxCoeff());
  std::vector<Vec> candidates;
  Mat a(d, d);
  Vec b(d);
  for_each_subset(n, d, [&](const std::vector<int>& idx) {
    for (int r = 0; r < d; ++r) {
      a.row(r) = nh.units[idx[r]].transpose();
      b[r] = nh.offsets[idx[r]];
    }
    Vec x;
    try {
      x = solve_square_system(a, b);
    } catch (const SingularMatrix&) {
      return;  // degenerate subset, skipped
    }
    const double ftol = 1e-9 * std::max({1.0, x.norm(), href});
    for (int i = 0; i < n; ++i)
      if (nh.units[i].dot(x) - nh.offsets[i] > ftol) return;
    candidates.push_back(std::move(x));
  });

  if (candidates.empty())
    throw EmptyPolytope("enumerate: no feasible basic point");

  double radius = 1.0;
  for (const Vec& x : candidates) radius = std::max(radius, x.norm());
  std::vector<Vec> vertices;
  for (const Vec& x : candidates) {
    bool dup = false;
    for (const Vec& v : vertices)
      if ((v - x).norm() <= 1e-8 * radius) {
        dup = true;
        break;
      }
    if (!dup) vertices.push_back(x);
  }
  return {d, std::move(vertices)};
}

PolytopeGeometry facet_geometry(const HPolytope& h, const VPolytope& v) {
  const NormalizedH nh = normalize_halfspaces(h);
  const int d = nh.dim;
  const int n = static_cast<int>(nh.units.size());
  if (v.ambient_dim != d)
    throw DimensionMismatch("facet_geometry: dimension mismatch");
  const int m = static_cast<int>(v.vertices.size());
  if (m < d + 1)
    throw DegenerateGeometry("facet_geometry: too few vertices");

  const Vec c = centroid(v.vertices);
  double radius = 0.0;
  double extent = 0.0;
  for (const Vec& x : v.vertices) {
    radius = std::max(radius, (x - c).norm());
    extent = std::max(extent, x.norm());
  }
  if (radius <= 0.0)
    throw DegenerateGeometry("facet_geometry: coincident vertices");
  const double on_tol =
      1e-9 * std::max({radius, extent, nh.offsets.cwiseAbs().maxCoeff()});

  std::vector<std::vector<char>> incidence(n, std::vector<char>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      incidence[i][j] =
          std::abs(nh.units[i].dot(v.vertices[j]) - nh.offsets[i]) <= on_tol;

  FaceContext ctx{incidence.data(), n, m};

  PolytopeGeometry geo;
  geo.vertices = v;
  geo.facet_vertex_sets.resize(n);
  geo.facet_areas = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int>& ids = geo.facet_vertex_sets[i];
    for (int j = 0; j < m; ++j)
      if (incidence[i][j]) ids.push_back(j);
    if (static_cast<int>(ids.size()) < d) continue;  // tangent, not a facet

    const Mat frame = orthonormal_complement_basis(nh.units[i]);
    const Vec& origin = v.vertices[ids[0]];
    std::vector<Vec> local;
    local.reserve(ids.size());
    for (int j : ids)
      local.push_back(frame.transpose() * (v.vertices[j] - origin));
    geo.facet_areas[i] = face_volume_rec(ctx, ids, local, d - 1);
  }

  const double total_area = geo.facet_areas.sum();
  if (total_area <= 0.0)
    throw DegenerateGeometry("facet_geometry: no facet has positive area");

  // closed-boundary balance: sum of area-weighted outer normals vanishes
  Vec balance = Vec::Zero(d);
  for (int i = 0; i < n; ++i) balance += geo.facet_areas[i] * nh.units[i];
  if (balance.norm() > 1e-9 * total_area)
    throw DegenerateGeometry("facet_geometry: normal balance violated");

  // volume via support distances from the vertex centroid
  double vol = 0.0;
  for (int i = 0; i < n; ++i)
    vol += (nh.offsets[i] - nh.units[i].dot(c)) * geo.facet_areas[i];
  vol /= d;

  // independent route: pyramid recursion over the whole vertex set
  std::vector<int> all_ids(m);
  for (int j = 0; j < m; ++j) all_ids[j] = j;
  std::vector<Vec> centered;
  centered.reserve(m);
  for (const Vec& x : v.vertices) centered.push_back(x - c);
  const double vol_rec = face_volume_rec(ctx, all_ids, centered, d);
  if (std::abs(vol - vol_rec) > 1e-8 * std::max({vol, vol_rec, 1e-300}))
    throw DegenerateGeometry("facet_geometry: volume cross-check failed");

  geo.volume = vol;
  return geo;
}

Mat area_jacobian(const HPolytope& h, const PolytopeGeometry& geo) {
  const NormalizedH nh = normalize_halfspaces(h);
  const int d = nh.dim;
  const int n = static_cast<int>(nh.units.size());
  const std::vector<Vec>& verts = geo.vertices.vertices;
  const int m = static_cast<int>(verts.size());

  // vertex incidence per facet, reused by the ridge-volume recursion
  std::vector<std::vector<char>> incidence(n, std::vector<char>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int j : geo.facet_vertex_sets[i]) incidence[i][j] = 1;
  FaceContext ctx{incidence.data(), n, m};

  Mat jac = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> ridge;
      for (int v : geo.facet_vertex_sets[i])
        if (incidence[j][v]) ridge.push_back(v);
      if (static_cast<int>(ridge.size()) < d - 1) continue;

      const double cos_ij = nh.units[i].dot(nh.units[j]);
      const double sin_sq = 1.0 - cos_ij * cos_ij;
      if (sin_sq <= 1e-24) continue;  // parallel planes share no ridge
      const double sin_ij = std::sqrt(sin_sq);

      double ridge_vol = 1.0;
      if (d >= 3) {
        // basis of the (d-2)-dimensional ridge span
        Mat pair(d, 2);
        pair.col(0) = nh.units[i];
        pair.col(1) = nh.units[j];
        Eigen::HouseholderQR<Mat> qr(pair);
        const Mat q = qr.householderQ();
        const Mat frame = q.rightCols(d - 2);
        const Vec& origin = verts[ridge[0]];
        std::vector<Vec> local;
        local.reserve(ridge.size());
        for (int v : ridge)
          local.push_back(frame.transpose() * (verts[v] - origin));
        ridge_vol = face_volume_rec(ctx, ridge, local, d - 2);
      }
      const double rho = ridge_vol / sin_ij;
      jac(i, j) = rho;
      jac(j, i) = rho;
      jac(i, i) -= rho * cos_ij;
      jac(j, j) -= rho * cos_ij;
    }
  }
  return jac;
}

FacetVolumeVector facet_volume_vector_of_polytope(const HPolytope& h) {
  const VPolytope v = enumerate_vertices(h);
  const PolytopeGeometry geo = facet_geometry(h, v);

  const Vec c = centroid(v.vertices);
  double radius = 0.0;
  for (const Vec& x : v.vertices) radius = std::max(radius, (x - c).norm());
  const double area_floor =
      1e-12 * std::pow(radius, h.ambient_dim - 1);

  std::vector<int> redundant;
  for (int i = 0; i < geo.facet_areas.size(); ++i)
    if (geo.facet_areas[i] <= area_floor) redundant.push_back(i + 1);
  if (!redundant.empty())
    throw RedundantHalfspace("halfspaces without facets", redundant);

  return {h.ambient_dim, geo.facet_areas};
}

}  // namespace fvol
