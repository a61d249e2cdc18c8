#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fvol {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// core linear algebra
struct DimensionMismatch : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
// raised when a computed quantity contradicts an exact-arithmetic guarantee
// (e.g. a Gram determinant far below zero)
struct InternalError : Error {
  using Error::Error;
};

// simplex sampling / volumes
struct DegenerateSimplex : Error {
  using Error::Error;
};
struct SamplingFailure : Error {
  using Error::Error;
};

// polytope kernel
struct EmptyPolytope : Error {
  using Error::Error;
};
struct UnboundedPolytope : Error {
  using Error::Error;
};
struct DegenerateGeometry : Error {
  using Error::Error;
};
struct OriginNotInterior : Error {
  using Error::Error;
};
struct RedundantHalfspace : Error {
  RedundantHalfspace(const std::string& msg, std::vector<int> idx)
      : Error(msg), indices(std::move(idx)) {}
  std::vector<int> indices;  // 1-based constraint indices
};

// normal-system solver
struct ConeViolation : Error {
  using Error::Error;
};
struct GenericityExhausted : Error {
  using Error::Error;
};
struct NoProgress : Error {
  using Error::Error;
};

// reconstruction
struct InvalidSystem : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  NoConvergence(const std::string& msg, int iters, double err)
      : Error(msg), iterations(iters), max_rel_error(err) {}
  int iterations;
  double max_rel_error;
};

// latitude identity checker
struct AssertionFailure : Error {
  using Error::Error;
};

}  // namespace fvol
