#pragma once

#include <vector>

#include "fvol/linalg.hpp"
#include "fvol/simplex.hpp"

namespace fvol {

// bounded polytope given by its extreme points
struct VPolytope {
  int ambient_dim = 0;
  std::vector<Vec> vertices;
};

// intersection of halfspaces <x, normal_i> <= offset_i
struct HPolytope {
  int ambient_dim = 0;
  std::vector<Vec> normals;
  Vec offsets;
};

// Construct a VPolytope; with enforce_irredundant, points inside the convex
// hull of the others (within tol * scale, decided by NNLS feasibility) are
// dropped, near-duplicates first.
VPolytope make_vpolytope(int ambient_dim, std::vector<Vec> vertices,
                         bool enforce_irredundant = true, double tol = 1e-10);

// Brute-force vertex enumeration over all d-subsets of constraints.
// Throws UnboundedPolytope when the normals do not positively span (the
// recession cone is nontrivial) and EmptyPolytope when no candidate basic
// point is feasible.
VPolytope enumerate_vertices(const HPolytope& h);

struct PolytopeGeometry {
  VPolytope vertices;
  std::vector<std::vector<int>> facet_vertex_sets;  // per constraint
  Vec facet_areas;                                  // (d-1)-volume, per constraint
  double volume = 0.0;
};

// Facet (d-1)-volumes by pyramid recursion inside each supporting
// hyperplane, plus the polytope volume. Requires v = enumerate_vertices(h).
// Verifies the Minkowski balance sum area_i * u_i ~ 0 and the volume
// identity d * vol = sum h_i * area_i internally.
PolytopeGeometry facet_geometry(const HPolytope& h, const VPolytope& v);

// Facet areas ordered by halfspace index; throws RedundantHalfspace (with the
// 1-based offending indices) when a constraint supports no facet.
FacetVolumeVector facet_volume_vector_of_polytope(const HPolytope& h);

// Exact derivative matrix d(area_i)/d(h_j) of the facet areas with respect
// to the support numbers: off-diagonal entries are ridge (d-2)-volumes over
// the sine of the normal angle, diagonals follow from degree-(d-1)
// homogeneity. Requires geo = facet_geometry(h, v).
Mat area_jacobian(const HPolytope& h, const PolytopeGeometry& geo);

}  // namespace fvol
