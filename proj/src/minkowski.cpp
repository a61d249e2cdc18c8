#include "fvol/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fvol {

namespace {

Vec centroid(const std::vector<Vec>& pts) {
  Vec c = Vec::Zero(pts.front().size());
  for (const Vec& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

struct Evaluation {
  VPolytope verts;  // recentred
  PolytopeGeometry geo;
  Vec h;  // recentred support numbers
  double max_rel_error = 0.0;
  double radius = 0.0;  // circumradius about the centroid
};

Evaluation evaluate(const std::vector<Vec>& normals, const Vec& h,
                    const Vec& alpha) {
  const int d = static_cast<int>(normals.front().size());
  HPolytope hp{d, normals, h};
  VPolytope v = enumerate_vertices(hp);

  // recentre: translate the vertex centroid to the origin
  const Vec c = centroid(v.vertices);
  Evaluation ev;
  ev.h = h;
  for (size_t i = 0; i < normals.size(); ++i) ev.h[i] -= normals[i].dot(c);
  for (Vec& x : v.vertices) x -= c;
  hp.offsets = ev.h;
  ev.geo = facet_geometry(hp, v);
  ev.verts = std::move(v);

  for (const Vec& x : ev.verts.vertices)
    ev.radius = std::max(ev.radius, x.norm());
  for (int i = 0; i < alpha.size(); ++i)
    ev.max_rel_error =
        std::max(ev.max_rel_error,
                 std::abs(ev.geo.facet_areas[i] - alpha[i]) / alpha[i]);
  return ev;
}

double tangent_floor(const Evaluation& ev, int d) {
  return 1e-12 * std::pow(std::max(ev.radius, 1e-30), d - 1);
}

// pull an off-body hyperplane toward its supporting position
double rescue_offset(const Evaluation& ev, const Vec& normal, double h_i,
                     double beta) {
  double support = -std::numeric_limits<double>::infinity();
  for (const Vec& x : ev.verts.vertices)
    support = std::max(support, normal.dot(x));
  return (1.0 - beta) * h_i + beta * support;
}

// damped multiplicative sweep h_i <- h_i (alpha_i/area_i)^gamma with the
// per-facet factor clamped, tangent rescue, and a closing global rescale
Vec propose_multiplicative(const Evaluation& best,
                           const std::vector<Vec>& normals, const Vec& alpha,
                           double gamma, double beta, int d) {
  const int n = static_cast<int>(alpha.size());
  const double floor_area = tangent_floor(best, d);
  Vec next = best.h;
  double ratio_sum = 0.0;
  int ratio_count = 0;
  for (int i = 0; i < n; ++i) {
    const double area = best.geo.facet_areas[i];
    if (area < floor_area) {
      next[i] = rescue_offset(best, normals[i], best.h[i], beta);
    } else {
      const double ratio = alpha[i] / area;
      next[i] = best.h[i] * std::clamp(std::pow(ratio, gamma), 0.5, 2.0);
      ratio_sum += ratio;
      ++ratio_count;
    }
  }
  if (ratio_count > 0) {
    const double lambda = std::clamp(
        std::pow(ratio_sum / ratio_count, 1.0 / (d - 1)), 0.5, 2.0);
    next *= lambda;
  }
  return next;
}

// damped Newton step on area(h) = alpha using the exact ridge Jacobian;
// the translation null space is handled by a thresholded least-squares solve
Vec propose_newton(const Evaluation& best, const std::vector<Vec>& normals,
                   const Vec& alpha, double step, double beta, int d) {
  const int n = static_cast<int>(alpha.size());
  const HPolytope hp{d, normals, best.h};
  const Mat jac = area_jacobian(hp, best.geo);
  const Vec rhs = alpha - best.geo.facet_areas;

  Eigen::JacobiSVD<Mat> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv[0] > 0.0 ? 1e-10 * sv[0] : 0.0;
  Vec z = svd.matrixU().transpose() * rhs;
  for (int i = 0; i < sv.size(); ++i)
    z[i] = sv[i] > cutoff ? z[i] / sv[i] : 0.0;
  Vec next = best.h + step * (svd.matrixV() * z);

  const double floor_area = tangent_floor(best, d);
  for (int i = 0; i < n; ++i)
    if (best.geo.facet_areas[i] < floor_area)
      next[i] = rescue_offset(best, normals[i], best.h[i], beta);
  return next;
}

}  // namespace

ReconstructResult reconstruct(const UnitNormalSystem& sys,
                              const ReconstructOptions& opts) {
  const int d = sys.dim;
  const int n = static_cast<int>(sys.normals.size());
  if (n != sys.weights.size() || n < d + 1)
    throw InvalidSystem("reconstruct: inconsistent system sizes");
  for (int i = 0; i < n; ++i)
    if (!(sys.weights[i] > 0.0))
      throw InvalidSystem("reconstruct: nonpositive weight");

  const SystemDiagnostics diag = system_diagnostics(sys, opts.rank_tol);
  const double total = sys.weights.sum();
  if (diag.max_unit_error > opts.unit_tol)
    throw InvalidSystem("reconstruct: normals are not unit vectors");
  if (diag.min_pairwise_distance < opts.distinct_tol)
    throw InvalidSystem("reconstruct: normals are not pairwise distinct");
  if (diag.rank != d)
    throw InvalidSystem("reconstruct: normals do not span R^d");
  if (diag.residual > opts.residual_tol * total)
    throw InvalidSystem("reconstruct: weighted normal sum is not zero");

  std::vector<Vec> normals = sys.normals;
  for (Vec& u : normals) u /= u.norm();
  const Vec& alpha = sys.weights;

  ReconstructResult result;
  Evaluation best;
  try {
    best = evaluate(normals, Vec::Ones(n), alpha);
  } catch (const Error&) {
    throw InvalidSystem("reconstruct: initial support vector infeasible");
  }
  result.iterations = 1;
  result.accepted_errors.push_back(best.max_rel_error);

  double gamma = opts.gamma;
  double newton_step = 1.0;
  bool prefer_newton = false;

  while (best.max_rel_error > opts.area_tol &&
         result.iterations < opts.max_iters) {
    ++result.iterations;
    if (gamma < 1e-8 && newton_step < 1e-8) break;

    const Vec proposal =
        prefer_newton
            ? propose_newton(best, normals, alpha, newton_step, opts.beta, d)
            : propose_multiplicative(best, normals, alpha, gamma, opts.beta,
                                     d);
    bool improved = false;
    try {
      Evaluation ev = evaluate(normals, proposal, alpha);
      if (ev.max_rel_error <= best.max_rel_error) {
        improved = ev.max_rel_error < best.max_rel_error;
        best = std::move(ev);
        result.accepted_errors.push_back(best.max_rel_error);
      }
    } catch (const Error&) {
      // infeasible or degenerate proposal: treat as a rejected step
    }

    if (prefer_newton) {
      if (improved) {
        newton_step = std::min(2.0 * newton_step, 1.0);
      } else {
        newton_step *= 0.5;
        if (newton_step < 1e-8) prefer_newton = false;
      }
    } else {
      if (improved) {
        gamma = std::min(2.0 * gamma, opts.gamma);
        // once the multiplicative sweep slows down, the exact-Jacobian step
        // finishes the job quadratically
        if (best.max_rel_error < 0.5) prefer_newton = true;
      } else {
        gamma *= 0.5;
        if (gamma < 1e-4) {
          prefer_newton = true;
          newton_step = 1.0;
        }
      }
    }
  }

  if (best.max_rel_error > opts.area_tol) {
    std::ostringstream os;
    os << "reconstruct: no convergence after " << result.iterations
       << " iterations, max relative area error " << best.max_rel_error;
    throw NoConvergence(os.str(), result.iterations, best.max_rel_error);
  }

  result.hull = HPolytope{d, normals, best.h};
  result.geometry = std::move(best.geo);
  result.max_rel_error = best.max_rel_error;
  return result;
}

}  // namespace fvol
