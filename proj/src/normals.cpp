#include "fvol/normals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fvol {

namespace {

double min_pairwise_chordal(const std::vector<Vec>& u) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      best = std::min(best, (u[i] - u[j]).norm());
  return best;
}

Vec weighted_sum(const Vec& w, const std::vector<Vec>& u) {
  Vec s = Vec::Zero(u.front().size());
  for (size_t i = 0; i < u.size(); ++i) s += w[i] * u[i];
  return s;
}

// exact closed form for a triangle: angles from the law of cosines
std::vector<Vec> triangle_normals(const Vec& alpha) {
  const double a = alpha[0], b = alpha[1], c = alpha[2];
  double cos_ab = (c * c - a * a - b * b) / (2.0 * a * b);
  cos_ab = std::clamp(cos_ab, -1.0, 1.0);
  const double sin_ab = std::sqrt(std::max(0.0, 1.0 - cos_ab * cos_ab));
  std::vector<Vec> u(3, Vec(2));
  u[0] << 1.0, 0.0;
  u[1] << cos_ab, sin_ab;
  Vec s = a * u[0] + b * u[1];
  u[2] = -s / s.norm();
  return u;
}

}  // namespace

SystemDiagnostics system_diagnostics(const UnitNormalSystem& sys,
                                     double rank_tol) {
  SystemDiagnostics diag;
  diag.residual = weighted_sum(sys.weights, sys.normals).norm();
  for (const Vec& u : sys.normals)
    diag.max_unit_error = std::max(diag.max_unit_error,
                                   std::abs(u.norm() - 1.0));
  diag.min_pairwise_distance = min_pairwise_chordal(sys.normals);
  Mat m(sys.dim, sys.normals.size());
  for (size_t i = 0; i < sys.normals.size(); ++i) m.col(i) = sys.normals[i];
  diag.rank = numeric_rank(m, rank_tol);
  return diag;
}

SpherePathConfig make_path_config(int count, const Vec& base, Rng& rng) {
  SpherePathConfig cfg;
  cfg.base = base;
  cfg.rotates.assign(count, 0);
  cfg.directions.assign(count, Vec());
  const Mat complement = orthonormal_complement_basis(base);
  for (int i = 0; i < count; ++i) {
    const bool rotates = ((i + 1) % 2) == 1;  // 1-based odd positions
    cfg.rotates[i] = rotates ? 1 : 0;
    if (rotates) {
      if (base.size() == 1)
        throw DimensionMismatch("path config: need dim >= 2");
      cfg.directions[i] =
          complement * rng.unit_vector(static_cast<int>(base.size()) - 1);
    }
  }
  return cfg;
}

Vec component_sum(const std::vector<Vec>& points) {
  if (points.empty()) throw DimensionMismatch("component_sum: empty input");
  Vec s = Vec::Zero(points.front().size());
  for (const Vec& p : points) {
    if (p.size() != s.size())
      throw DimensionMismatch("component_sum: mixed dimensions");
    s += p;
  }
  return s;
}

std::vector<Vec> path_point(double t, const Vec& weights,
                            const SpherePathConfig& cfg) {
  const int count = static_cast<int>(cfg.rotates.size());
  if (weights.size() < count)
    throw DimensionMismatch("path_point: weights/config mismatch");
  double ct, st;
  if (t == 0.0) {
    ct = 1.0;
    st = 0.0;
  } else if (t == 1.0) {
    ct = -1.0;
    st = 0.0;
  } else {
    ct = std::cos(M_PI * t);
    st = std::sin(M_PI * t);
  }
  std::vector<Vec> x(count);
  for (int i = 0; i < count; ++i) {
    if (cfg.rotates[i])
      x[i] = weights[i] * (ct * cfg.base + st * cfg.directions[i]);
    else
      x[i] = weights[i] * cfg.base;
  }
  return x;
}

std::vector<Vec> refine_descent(std::vector<Vec> u, const Vec& alpha,
                                double tol) {
  const int n = static_cast<int>(u.size());
  if (alpha.size() != n)
    throw DimensionMismatch("refine_descent: weight count mismatch");
  const double tol_sq = tol * tol;

  Vec residual = weighted_sum(alpha, u);
  double value = residual.squaredNorm();
  if (value <= tol_sq) return u;

  const double lipschitz = 2.0 * alpha.squaredNorm();
  double step = 1.0 / lipschitz;
  int rejections_in_a_row = 0;

  for (int iter = 0; iter < 10000; ++iter) {
    // Riemannian gradient: tangential part of 2 alpha_i * residual at u_i
    std::vector<Vec> grad(n);
    double grad_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      grad[i] = 2.0 * alpha[i] * (residual - residual.dot(u[i]) * u[i]);
      grad_sq += grad[i].squaredNorm();
    }
    if (grad_sq <= 1e-300) break;  // critical point

    std::vector<Vec> trial(n);
    for (int i = 0; i < n; ++i) {
      Vec v = u[i] - step * grad[i];
      trial[i] = v / v.norm();
    }
    const Vec trial_residual = weighted_sum(alpha, trial);
    const double trial_value = trial_residual.squaredNorm();

    if (trial_value < value) {
      u = std::move(trial);
      residual = trial_residual;
      value = trial_value;
      step = std::min(step * 1.5, 1e6 / lipschitz);
      rejections_in_a_row = 0;
      if (value <= tol_sq) return u;
    } else {
      step *= 0.5;
      if (++rejections_in_a_row > 200 || step < 1e-20 / lipschitz) break;
    }
  }
  if (value <= tol_sq) return u;
  throw NoProgress("refine_descent: residual stagnated above tolerance");
}

UnitNormalSystem solve_normals(const Vec& alpha, int dim, Rng& rng,
                               const SolveOptions& opts) {
  const int n = static_cast<int>(alpha.size());
  if (dim < 2) throw std::invalid_argument("solve_normals: dim < 2");
  if (n < dim + 1)
    throw std::invalid_argument("solve_normals: need n >= dim + 1");

  const ConeVerdict verdict = cone_membership(alpha, opts.cone_tol);
  if (verdict.region != Region::Inside)
    throw ConeViolation("solve_normals: alpha is " +
                        region_str(verdict.region) + ", not strictly inside");

  const double total = alpha.sum();

  auto accept = [&](std::vector<Vec> u) -> UnitNormalSystem {
    UnitNormalSystem sys{dim, alpha, std::move(u)};
    const SystemDiagnostics diag = system_diagnostics(sys, opts.rank_tol);
    if (diag.residual > opts.residual_tol * total ||
        diag.min_pairwise_distance < opts.distinct_tol || diag.rank != dim)
      throw NoProgress("candidate failed system checks");
    return sys;
  };

  if (dim == 2 && n == 3) {
    // unique up to reflection, so restarts cannot help here
    try {
      return accept(triangle_normals(alpha));
    } catch (const NoProgress&) {
      throw GenericityExhausted(
          "solve_normals: triangle normals failed the system checks");
    }
  }

  // work on the ascending rearrangement, undo at the end
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return alpha[a] < alpha[b]; });
  Vec sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = alpha[order[i]];
  const double largest = sorted[n - 1];

  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    const Vec base = rng.unit_vector(dim);
    const SpherePathConfig cfg = make_path_config(n - 1, base, rng);

    auto gap = [&](double t) {
      return component_sum(path_point(t, sorted, cfg)).norm() - largest;
    };

    // the cone inequalities force a sign change along the path
    const double g0 = gap(0.0);
    const double g1 = gap(1.0);
    if (!(g0 > 0.0) || !(g1 < 0.0))
      throw InternalError("solve_normals: path endpoints lost their signs");

    double lo = 0.0, hi = 1.0;
    for (int k = 1; k <= 64; ++k) {
      const double t = static_cast<double>(k) / 64.0;
      if (gap(t) <= 0.0) {
        lo = static_cast<double>(k - 1) / 64.0;
        hi = t;
        break;
      }
    }
    double mid = 0.5 * (lo + hi);
    for (int k = 0; k < 80; ++k) {
      mid = 0.5 * (lo + hi);
      const double g = gap(mid);
      if (g == 0.0) break;
      (g > 0.0 ? lo : hi) = mid;
    }

    const std::vector<Vec> x = path_point(mid, sorted, cfg);
    const Vec sum = component_sum(x);
    if (sum.norm() <= 0.0) continue;

    std::vector<Vec> u(n);
    for (int i = 0; i < n - 1; ++i) u[i] = x[i] / x[i].norm();
    u[n - 1] = -sum / sum.norm();

    // The raw path point is non-generic whenever several components stay
    // fixed (they coincide at v) or the sweep spans too few directions for
    // full rank. Walking within the solution set fixes that: perturb
    // tangentially and descend back to a zero of the residual, which is
    // generic with probability one.
    for (int attempt = 0; attempt < 8; ++attempt) {
      try {
        u = refine_descent(u, sorted, 1e-13 * total);
        std::vector<Vec> unsorted(n);
        for (int i = 0; i < n; ++i) unsorted[order[i]] = u[i];
        return accept(std::move(unsorted));
      } catch (const NoProgress&) {
        const double eps = 0.05;
        for (int i = 0; i < n; ++i) {
          const Vec noise = rng.unit_vector(dim);
          Vec t = noise - noise.dot(u[i]) * u[i];
          const double tn = t.norm();
          if (tn > 1e-12) u[i] = (u[i] + eps * (t / tn)).normalized();
        }
      }
    }
  }
  throw GenericityExhausted("solve_normals: restart budget exhausted");
}

}  // namespace fvol
