#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fvol/errors.hpp"

namespace fvol {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// default relative tolerance for rank decisions
inline constexpr double kRankTol = 1e-9;

// k-dimensional volume of conv(vertices) for k+1 points in R^d, 0 <= k <= d,
// computed as sqrt(det(A^T A)) / k! with A the edge matrix from the first
// vertex. Returns 0 for affinely dependent inputs; a Gram determinant more
// negative than roundoff allows raises InternalError.
double gram_volume(const std::vector<Vec>& vertices);

// number of singular values above rel_tol * sigma_max; 0 for the zero matrix
int numeric_rank(const Mat& m, double rel_tol = kRankTol);

// solves a*x = b for square a; throws SingularMatrix when numeric_rank(a) < d
// or the residual fails 1e-10 * (|a| |x| + |b|)
Vec solve_square_system(const Mat& a, const Vec& b);

// d-1 orthonormal vectors completing the unit vector u to a basis of R^d,
// returned as the columns of a d x (d-1) matrix; deterministic (Householder)
Mat orthonormal_complement_basis(const Vec& u);

struct NnlsResult {
  Vec coeffs;
  double residual = 0.0;
};

// Lawson-Hanson nonnegative least squares: min |a*x - b| s.t. x >= 0
NnlsResult nnls(const Mat& a, const Vec& b);

// true when the directions positively span R^dim, i.e. every vector is a
// nonnegative combination of them; this is the recession-cone test used to
// certify boundedness of halfspace intersections
bool positively_spans(const std::vector<Vec>& directions, int dim,
                      double tol = 1e-9);

}  // namespace fvol
