#include "fvol/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace fvol {

double gram_volume(const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw DimensionMismatch("gram_volume: no vertices");
  const int d = static_cast<int>(vertices.front().size());
  const int k = static_cast<int>(vertices.size()) - 1;
  for (const Vec& v : vertices) {
    if (static_cast<int>(v.size()) != d)
      throw DimensionMismatch("gram_volume: mixed point dimensions");
  }
  if (k > d)
    throw DimensionMismatch("gram_volume: more than d+1 points in R^d");
  if (k == 0) return 1.0;

  Mat a(d, k);
  for (int j = 0; j < k; ++j) a.col(j) = vertices[j + 1] - vertices[0];
  const Mat gram = a.transpose() * a;
  const double det = gram.determinant();

  // Gram matrices are positive semidefinite; a slightly negative determinant
  // is roundoff, anything worse is a real inconsistency. The scale is the
  // Hadamard bound prod |a_j|^2.
  double scale = 1.0;
  for (int j = 0; j < k; ++j) scale *= gram(j, j);
  if (det < 0.0) {
    if (det < -1e-12 * scale)
      throw InternalError("gram_volume: negative Gram determinant");
    return 0.0;
  }

  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return std::sqrt(det) / factorial;
}

int numeric_rank(const Mat& m, double rel_tol) {
  if (rel_tol <= 0.0) throw std::invalid_argument("numeric_rank: rel_tol <= 0");
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  if (smax <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * smax) ++rank;
  return rank;
}

Vec solve_square_system(const Mat& a, const Vec& b) {
  if (a.rows() != a.cols()) throw DimensionMismatch("solve: matrix not square");
  if (a.rows() != b.size()) throw DimensionMismatch("solve: size mismatch");
  const int d = static_cast<int>(a.rows());

  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv[0];
  if (smax <= 0.0 || sv[d - 1] <= kRankTol * smax)
    throw SingularMatrix("solve: rank-deficient matrix");
  const Vec x = svd.solve(b);

  const double residual = (a * x - b).norm();
  const double bound = 1e-10 * (a.norm() * x.norm() + b.norm());
  if (residual > bound)
    throw SingularMatrix("solve: residual beyond conditioning bound");
  return x;
}

Mat orthonormal_complement_basis(const Vec& u) {
  const int d = static_cast<int>(u.size());
  if (d < 1) throw DimensionMismatch("complement basis: empty vector");
  const double norm = u.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw DimensionMismatch("complement basis: input is not a unit vector");

  const Vec un = u / norm;
  // Householder reflection taking un to -s*e1; its remaining columns are the
  // complement basis.
  const double s = un[0] >= 0.0 ? 1.0 : -1.0;
  Vec w = un;
  w[0] += s;
  const double wsq = w.squaredNorm();
  Mat basis(d, d - 1);
  for (int j = 1; j < d; ++j) {
    Vec col = -2.0 * (w[j] / wsq) * w;
    col[j] += 1.0;
    basis.col(j - 1) = col;
  }
  return basis;
}

NnlsResult nnls(const Mat& a, const Vec& b) {
  const int n = static_cast<int>(a.cols());
  Vec x = Vec::Zero(n);
  std::vector<char> passive(n, 0);

  double colscale = 0.0;
  for (int j = 0; j < n; ++j) colscale = std::max(colscale, a.col(j).norm());
  const double wtol = 1e-12 * (1.0 + colscale) * (1.0 + b.norm());

  auto solve_passive = [&](const std::vector<int>& idx) -> Vec {
    Mat sub(a.rows(), idx.size());
    for (size_t c = 0; c < idx.size(); ++c) sub.col(c) = a.col(idx[c]);
    return sub.colPivHouseholderQr().solve(b);
  };

  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Vec w = a.transpose() * (b - a * x);
    int best = -1;
    double best_w = wtol;
    for (int j = 0; j < n; ++j) {
      if (!passive[j] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = 1;

    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      std::vector<int> idx;
      for (int j = 0; j < n; ++j)
        if (passive[j]) idx.push_back(j);
      const Vec z = solve_passive(idx);

      double zmin = 0.0;
      for (size_t c = 0; c < idx.size(); ++c) zmin = std::min(zmin, z[c]);
      if (zmin > 0.0) {
        x.setZero();
        for (size_t c = 0; c < idx.size(); ++c) x[idx[c]] = z[c];
        break;
      }
      // step toward z until the first coefficient hits zero, then drop it
      double alpha = 1.0;
      for (size_t c = 0; c < idx.size(); ++c) {
        if (z[c] <= 0.0) {
          const double xi = x[idx[c]];
          if (xi - z[c] > 0.0) alpha = std::min(alpha, xi / (xi - z[c]));
        }
      }
      for (size_t c = 0; c < idx.size(); ++c) {
        x[idx[c]] += alpha * (z[c] - x[idx[c]]);
        if (x[idx[c]] <= 1e-14 * (1.0 + colscale)) {
          x[idx[c]] = 0.0;
          if (z[c] <= 0.0) passive[idx[c]] = 0;
        }
      }
    }
  }
  return {x, (a * x - b).norm()};
}

bool positively_spans(const std::vector<Vec>& directions, int dim,
                      double tol) {
  if (static_cast<int>(directions.size()) < dim + 1) return false;
  Mat a(dim, directions.size());
  for (size_t j = 0; j < directions.size(); ++j) {
    const double n = directions[j].norm();
    if (n <= 0.0) return false;
    a.col(j) = directions[j] / n;
  }
  for (int k = 0; k < dim; ++k) {
    for (double sign : {1.0, -1.0}) {
      Vec b = Vec::Zero(dim);
      b[k] = sign;
      if (nnls(a, b).residual > tol) return false;
    }
  }
  return true;
}

}  // namespace fvol
