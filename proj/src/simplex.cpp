#include "fvol/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace fvol {

namespace {

double max_pairwise_distance(const std::vector<Vec>& pts) {
  double best = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, (pts[i] - pts[j]).norm());
  return best;
}

// scale-free degeneracy test: full volume above 1e-12 * diameter^d
bool is_nondegenerate(const std::vector<Vec>& pts, int dim) {
  const double vol = gram_volume(pts);
  const double diam = max_pairwise_distance(pts);
  return vol > 1e-12 * std::pow(diam, dim);
}

}  // namespace

std::string ShapeClass::str() const {
  switch (kind) {
    case Kind::Acute:
      return "Acute";
    case Kind::Right:
      return "Right(" + std::to_string(index) + ")";
    case Kind::Obtuse:
      return "Obtuse(" + std::to_string(index) + ")";
  }
  return "?";
}

FacetVolumeVector facet_volume_vector(const SimplexRealization& s) {
  const int d = s.dim;
  if (d < 2) throw DimensionMismatch("facet_volume_vector: dim must be >= 2");
  if (static_cast<int>(s.vertices.size()) != d + 1)
    throw DimensionMismatch("facet_volume_vector: need d+1 vertices");
  if (!is_nondegenerate(s.vertices, d))
    throw DegenerateSimplex("facet_volume_vector: affinely dependent vertices");

  Vec values(d + 1);
  std::vector<Vec> facet;
  facet.reserve(d);
  for (int i = 0; i <= d; ++i) {
    facet.clear();
    for (int j = 0; j <= d; ++j)
      if (j != i) facet.push_back(s.vertices[j]);
    values[i] = gram_volume(facet);
  }
  return {d, values};
}

Vec squared_volume_vector(const FacetVolumeVector& f) {
  return f.values.array().square();
}

ShapeClass classify(const FacetVolumeVector& f, double rel_tol) {
  if (rel_tol <= 0.0) throw std::invalid_argument("classify: rel_tol <= 0");
  const Vec sq = squared_volume_vector(f);
  const double total = sq.sum();
  int imax = 0;
  sq.maxCoeff(&imax);
  // excess of facet imax over the sum of all others; only the largest entry
  // can be nonnegative here, so ties are impossible
  const double excess = 2.0 * sq[imax] - total;
  const double band = rel_tol * total;
  if (excess > band) return {ShapeClass::Kind::Obtuse, imax + 1};
  if (excess >= -band) return {ShapeClass::Kind::Right, imax + 1};
  return {ShapeClass::Kind::Acute, 0};
}

SimplexRealization sample_gaussian_simplex(int dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("sample_gaussian_simplex: dim < 2");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vec> pts;
    pts.reserve(dim + 1);
    for (int i = 0; i <= dim; ++i) pts.push_back(rng.gaussian_vector(dim));
    if (is_nondegenerate(pts, dim)) return {dim, std::move(pts)};
  }
  throw SamplingFailure("sample_gaussian_simplex: 100 degenerate draws");
}

}  // namespace fvol
