#include "fvol/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fvol/rng.hpp"

namespace fvol {

SampleRecord make_sample_record(int dim, std::uint64_t seed,
                                std::int64_t index, double class_tol) {
  Rng rng = Rng::for_index(seed, static_cast<std::uint64_t>(index));
  const SimplexRealization s = sample_gaussian_simplex(dim, rng);
  const FacetVolumeVector f = facet_volume_vector(s);

  SampleRecord rec;
  rec.squared_volumes = squared_volume_vector(f);
  rec.normalized_squared = rec.squared_volumes / rec.squared_volumes.sum();
  rec.shape = classify(f, class_tol);
  rec.seed_index = index;
  return rec;
}

namespace {

// stable Heron: sides sorted descending, Kahan's parenthesization
double heron_16_area_sq(double a, double b, double c) {
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  return (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
}

}  // namespace

LatitudeReport latitude_check(int count, std::uint64_t seed, double tol) {
  if (count < 2) throw std::invalid_argument("latitude_check: count < 2");

  LatitudeReport report;
  report.circles = count;
  report.points_per_circle = count;

  Rng rng(seed);
  Vec pole(3);
  pole << 1.0, 1.0, 1.0;
  pole /= std::sqrt(3.0);
  const Mat frame = orthonormal_complement_basis(pole);

  const double lo = std::sqrt(2.0);
  const double hi = std::sqrt(3.0);
  for (int ci = 0; ci < count; ++ci) {
    // stay inside the open valid band; at sum(s) = sqrt(2) the triangles
    // degenerate and at sqrt(3) the circle shrinks to the equilateral point
    const double sum_s = lo + (hi - lo) * rng.uniform(1e-3, 1.0 - 1e-6);
    const double rho = std::sqrt(1.0 - sum_s * sum_s / 3.0);
    const Vec center = (sum_s / std::sqrt(3.0)) * pole;
    const double closed_form = sum_s * sum_s - 2.0;

    double area_min = 0.0, area_max = 0.0;
    for (int pi = 0; pi < count; ++pi) {
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      const Vec s = center + rho * (std::cos(theta) * frame.col(0) +
                                    std::sin(theta) * frame.col(1));
      const double heron =
          heron_16_area_sq(std::sqrt(s[0]), std::sqrt(s[1]), std::sqrt(s[2]));
      const double identity_err =
          std::abs(heron - (std::pow(s.sum(), 2) - 2.0));
      report.max_identity_error =
          std::max(report.max_identity_error, identity_err);
      if (identity_err > tol) {
        std::ostringstream os;
        os << "latitude_check: identity failed on circle " << ci
           << " (sum s = " << sum_s << ", error " << identity_err << ")";
        throw AssertionFailure(os.str());
      }

      const double area = 0.25 * std::sqrt(std::max(0.0, heron));
      if (pi == 0) {
        area_min = area_max = area;
      } else {
        area_min = std::min(area_min, area);
        area_max = std::max(area_max, area);
      }
    }
    const double spread = area_max - area_min;
    report.max_area_spread = std::max(report.max_area_spread, spread);
    if (spread > tol) {
      std::ostringstream os;
      os << "latitude_check: area spread " << spread << " on circle " << ci
         << " (sum s = " << sum_s << ", closed-form 16A^2 = " << closed_form
         << ")";
      throw AssertionFailure(os.str());
    }
  }
  return report;
}

}  // namespace fvol
