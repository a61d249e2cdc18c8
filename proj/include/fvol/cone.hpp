#pragma once

#include <string>
#include <vector>

#include "fvol/linalg.hpp"
#include "fvol/polytope.hpp"

namespace fvol {

enum class Region { Inside, Boundary, Outside };

std::string region_str(Region r);

// verdict for the open cone { a > 0 : each a_i < sum of the others }
struct ConeVerdict {
  Region region = Region::Outside;
  int index = 0;          // 1-based offending index for Boundary/Outside
  double margin = 0.0;    // min slack / sum, when Inside
  double violation = 0.0; // normalized violation, when Outside

  std::string str() const;
};

// membership of alpha in the cone, with a relative boundary band of
// rel_tol * sum(alpha)
ConeVerdict cone_membership(const Vec& alpha, double rel_tol = 1e-9);

// alpha / sum(alpha); the coordinates then sum to one
Vec normalize_to_h(const Vec& alpha);

// Orthonormal chart of the zero-sum hyperplane W_n in R^n; fixed by
// orthonormalizing e_1 - e/n, ..., e_{n-1} - e/n in order.
struct WnChart {
  int n = 0;
  Mat basis;  // n x (n-1), orthonormal columns spanning W_n

  Vec to_chart(const Vec& ambient) const { return basis.transpose() * ambient; }
  Vec to_ambient(const Vec& chart) const { return basis * chart; }
};

WnChart wn_chart(int n);

// conv( (2n/(n-2)) * D ∪ n * (-D) ) for the centered simplex
// D = conv{ e_i - e/n }, expressed in the chart coordinates; redundant
// vertices (all of -n*D when n = 3) are removed.
struct CenteredBody {
  WnChart chart;
  VPolytope body;  // in chart coordinates
};

CenteredBody build_p(int n);

// polar { y : <y, v> <= 1 for all vertices v }; certified by checking the
// result is a bounded nonempty intersection (equivalent to the origin being
// interior to p), else OriginNotInterior
HPolytope polar_dual(const VPolytope& p);

struct RelintVerdict {
  Region region = Region::Outside;
  int index = 0;       // 1-based tightest constraint for Boundary/Outside
  double slack = 0.0;  // min over constraints of offset - <normal, y>
};

RelintVerdict relint_membership(const HPolytope& h, const Vec& y,
                                double rel_tol = 1e-9);

struct AgreementReport {
  ConeVerdict inequality_verdict;
  RelintVerdict polar_verdict;
  bool agree = false;
};

// Precomputed chart + polar body for one n, so batches of equivalence checks
// don't rebuild the polytope each call.
class CorollaryChecker {
 public:
  explicit CorollaryChecker(int n);

  // verdict A: cone inequalities on alpha; verdict B: relint membership of
  // normalize_to_h(alpha) - e/n against the polar body; Boundary on either
  // side is treated as agreement
  AgreementReport check(const Vec& alpha, double rel_tol = 1e-9) const;

  const WnChart& chart() const { return chart_; }
  const VPolytope& body() const { return p_.body; }
  const HPolytope& polar() const { return polar_; }

 private:
  int n_;
  CenteredBody p_;
  HPolytope polar_;
  WnChart chart_;
};

AgreementReport corollary_equivalence(const Vec& alpha, double rel_tol = 1e-9);

// acute-region agreement for a squared-volume vector (n = d+1): "acute by
// inequalities" versus relint membership of the recentred normalized vector
AgreementReport acute_region_check(const Vec& squared, double rel_tol = 1e-9);

// regularity audit of the n = 4 body and its polar
struct CubeAudit {
  bool is_cube = false;
  bool polar_is_regular_octahedron = false;
  bool bipolar_ok = false;
  int vertex_count = 0;
  int polar_vertex_count = 0;
  int edge_count = 0;
  double vertex_radius_spread = 0.0;
  double edge_length_spread = 0.0;
  double polar_radius_spread = 0.0;
};

CubeAudit cube_audit(double tol = 1e-10);

// polar(polar(p)) has the same vertex set as p
bool bipolar_check(const VPolytope& p, double tol = 1e-10);

// every vertex of scale_inner * (-D) lies in the hull of scale_outer * D;
// exact statement used for n = 3 with scales 3 and 6
bool negative_simplex_contained(int n, double scale_inner, double scale_outer,
                                double tol = 1e-12);

}  // namespace fvol
