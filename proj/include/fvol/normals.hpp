#pragma once

#include <vector>

#include "fvol/cone.hpp"
#include "fvol/linalg.hpp"
#include "fvol/rng.hpp"

namespace fvol {

// n pairwise-distinct unit vectors spanning R^d with sum(weight_i * u_i) ~ 0
struct UnitNormalSystem {
  int dim = 0;
  Vec weights;
  std::vector<Vec> normals;
};

struct SystemDiagnostics {
  double residual = 0.0;               // |sum w_i u_i|
  double max_unit_error = 0.0;         // max | |u_i| - 1 |
  double min_pairwise_distance = 0.0;  // chordal
  int rank = 0;
};

SystemDiagnostics system_diagnostics(const UnitNormalSystem& sys,
                                     double rank_tol = kRankTol);

// rotation scheme for the path on the product of spheres: component i either
// stays at weight_i * base or rotates by pi toward its in-plane direction
struct SpherePathConfig {
  Vec base;                        // unit vector v
  std::vector<char> rotates;       // size n-1
  std::vector<Vec> directions;     // unit, orthogonal to base; empty if fixed
};

// alternate components rotate (1-based odd positions), directions drawn
// uniformly in the orthogonal complement of base
SpherePathConfig make_path_config(int count, const Vec& base, Rng& rng);

// component sum (x_1, ..., x_k) -> sum x_i
Vec component_sum(const std::vector<Vec>& points);

// x_i(t) on the product of spheres of radii weights_i: rotating components
// sweep weight_i * (cos(pi t) v + sin(pi t) w_i), fixed ones stay at
// weight_i * v; endpoint trig is clamped so t = 1 lands on exact signs
std::vector<Vec> path_point(double t, const Vec& weights,
                            const SpherePathConfig& cfg);

struct SolveOptions {
  double residual_tol = 1e-11;  // relative to sum(alpha)
  double distinct_tol = 1e-6;   // chordal distance between normals
  int max_restarts = 100;
  double cone_tol = 1e-9;
  double rank_tol = kRankTol;
};

// Builds a UnitNormalSystem for alpha strictly inside the cone: walk the
// rotation path until the component sum reaches norm alpha_max (bisection on
// a bracketed sign change), close the system with the opposite unit vector,
// polish, and restart with a fresh random configuration if the genericity
// checks (rank, pairwise distinctness) fail.
UnitNormalSystem solve_normals(const Vec& alpha, int dim, Rng& rng,
                               const SolveOptions& opts = {});

// Projected-gradient minimization of |sum alpha_i u_i|^2 over the product of
// unit spheres; accepts only decreasing steps, stops at residual <= tol or
// 10^4 iterations, throws NoProgress when stuck above tol.
std::vector<Vec> refine_descent(std::vector<Vec> u, const Vec& alpha,
                                double tol);

}  // namespace fvol
