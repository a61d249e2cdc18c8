#pragma once

#include <string>
#include <vector>

#include "fvol/linalg.hpp"
#include "fvol/rng.hpp"

namespace fvol {

// d+1 affinely independent points in R^d
struct SimplexRealization {
  int dim = 0;
  std::vector<Vec> vertices;
};

// facet volumes of a polytope, entry i belonging to facet i
struct FacetVolumeVector {
  int dim = 0;
  Vec values;
};

// A simplex is obtuse when some squared facet volume is at least the sum of
// the other squared facet volumes, acute when none is; Right is the explicit
// numerical boundary band between the two.
struct ShapeClass {
  enum class Kind { Acute, Right, Obtuse };
  Kind kind = Kind::Acute;
  int index = 0;  // 1-based facet index for Right/Obtuse, 0 for Acute

  std::string str() const;
  bool counts_as_obtuse() const { return kind != Kind::Acute; }
};

// volumes of the d+1 facets, entry i for the facet opposite vertex i
FacetVolumeVector facet_volume_vector(const SimplexRealization& s);

Vec squared_volume_vector(const FacetVolumeVector& f);

ShapeClass classify(const FacetVolumeVector& f, double rel_tol = 1e-9);

// d+1 points with independent standard-normal coordinates, rejected while
// affinely dependent
SimplexRealization sample_gaussian_simplex(int dim, Rng& rng);

}  // namespace fvol
