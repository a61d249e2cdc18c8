#pragma once

#include <vector>

#include "fvol/normals.hpp"
#include "fvol/polytope.hpp"

namespace fvol {

struct ReconstructOptions {
  double area_tol = 1e-8;  // max relative facet-area error at convergence
  int max_iters = 500;
  double gamma = 0.5;  // multiplicative damping exponent
  double beta = 0.5;   // tangent-facet pull factor
  // pre-condition thresholds on the input system
  double residual_tol = 1e-9;  // relative to sum(alpha)
  double distinct_tol = 1e-6;
  double rank_tol = kRankTol;
  double unit_tol = 1e-9;
};

struct ReconstructResult {
  HPolytope hull;  // unit normals with the converged support numbers
  PolytopeGeometry geometry;
  int iterations = 0;
  double max_rel_error = 0.0;
  std::vector<double> accepted_errors;  // non-increasing by construction
};

// Numerical Minkowski reconstruction: find support numbers h so the polytope
// with the prescribed outer unit normals has the prescribed facet volumes.
// Damped multiplicative fixed point on h_i <- h_i (alpha_i / area_i)^gamma
// with tangent-facet rescue and a global rescale per sweep; only
// error-decreasing steps are kept. Output is recentred so the vertex
// centroid sits at the origin.
ReconstructResult reconstruct(const UnitNormalSystem& sys,
                              const ReconstructOptions& opts = {});

}  // namespace fvol
