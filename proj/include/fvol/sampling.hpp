#pragma once

#include <cstdint>

#include "fvol/cone.hpp"
#include "fvol/simplex.hpp"

namespace fvol {

// one sampled simplex in squared facet-volume coordinates
struct SampleRecord {
  Vec squared_volumes;
  Vec normalized_squared;  // squared / sum, coordinates sum to one
  ShapeClass shape;
  std::int64_t seed_index = 0;
};

// Deterministic record for sample `index` of a run with the given seed; the
// per-index stream makes the output independent of any worker layout.
SampleRecord make_sample_record(int dim, std::uint64_t seed,
                                std::int64_t index, double class_tol = 1e-9);

struct LatitudeReport {
  int circles = 0;
  int points_per_circle = 0;
  double max_area_spread = 0.0;     // within-circle spread of the area
  double max_identity_error = 0.0;  // |16 A^2 - ((sum s)^2 - 2)|
};

// Triangles in squared-side coordinates s on the unit sphere sum(s^2) = 1:
// circles of fixed sum(s) have constant area, and 16 A^2 = (sum s)^2 - 2.
// Samples `count` circles with `count` points each and throws
// AssertionFailure (naming the circle) if either claim fails the tolerance.
LatitudeReport latitude_check(int count, std::uint64_t seed,
                              double tol = 1e-12);

}  // namespace fvol
