#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fvol/cone.hpp"
#include "fvol/simplex.hpp"

using namespace fvol;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// Heron's formula from edge lengths; an oracle for 2-dimensional facet areas
// that never touches the Gram-determinant path.
double heron_area(const Vec& a, const Vec& b, const Vec& c) {
  const double x = (a - b).norm(), y = (b - c).norm(), z = (c - a).norm();
  const double s = 0.5 * (x + y + z);
  return std::sqrt(std::max(0.0, s * (s - x) * (s - y) * (s - z)));
}

SimplexRealization triangle345() {
  return {2, {vec2(0, 0), vec2(4, 0), vec2(0, 3)}};
}

SimplexRealization unit_right_simplex3() {
  return {3, {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)}};
}

Mat random_rotation(int d, Rng& rng) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace

TEST_CASE("facet volumes of reference simplices") {
  const FacetVolumeVector f = facet_volume_vector(triangle345());
  CHECK(f.values[0] == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(f.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.values[2] == doctest::Approx(4.0).epsilon(1e-14));

  const double s3 = std::sqrt(3.0);
  SimplexRealization equilateral{
      2, {vec2(0, 0), vec2(1, 0), vec2(0.5, s3 / 2.0)}};
  const FacetVolumeVector fe = facet_volume_vector(equilateral);
  for (int i = 0; i < 3; ++i)
    CHECK(fe.values[i] == doctest::Approx(1.0).epsilon(1e-12));

  // unit right simplex in R^3: oracle via Heron on each vertex triple
  const SimplexRealization rs = unit_right_simplex3();
  const FacetVolumeVector fr = facet_volume_vector(rs);
  for (int i = 0; i < 4; ++i) {
    std::vector<Vec> tri;
    for (int j = 0; j < 4; ++j)
      if (j != i) tri.push_back(rs.vertices[j]);
    CHECK(fr.values[i] ==
          doctest::Approx(heron_area(tri[0], tri[1], tri[2])).epsilon(1e-13));
  }
  CHECK(fr.values[0] == doctest::Approx(s3 / 2.0).epsilon(1e-13));
  CHECK(fr.values[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(fr.values[2] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(fr.values[3] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("degenerate simplices rejected") {
  SimplexRealization flat{2, {vec2(0, 0), vec2(1, 1), vec2(2, 2)}};
  CHECK_THROWS_AS(facet_volume_vector(flat), DegenerateSimplex);
}

TEST_CASE("squared volumes") {
  Vec v(3);
  v << 5, 3, 4;
  const Vec sq = squared_volume_vector({2, v});
  CHECK(sq[0] == 25.0);
  CHECK(sq[1] == 9.0);
  CHECK(sq[2] == 16.0);
}

TEST_CASE("classification") {
  Vec right(3);
  right << 5, 3, 4;
  const ShapeClass c1 = classify({2, right});
  CHECK(c1.kind == ShapeClass::Kind::Right);
  CHECK(c1.index == 1);

  Vec acute = Vec::Ones(3);
  CHECK(classify({2, acute}).kind == ShapeClass::Kind::Acute);

  Vec rs(4);
  rs << std::sqrt(3.0) / 2.0, 0.5, 0.5, 0.5;
  const ShapeClass c3 = classify({3, rs});
  CHECK(c3.kind == ShapeClass::Kind::Right);
  CHECK(c3.index == 1);

  Vec obtuse(3);
  obtuse << 10, 3, 4;
  const ShapeClass c4 = classify({2, obtuse});
  CHECK(c4.kind == ShapeClass::Kind::Obtuse);
  CHECK(c4.index == 1);

  // invariant under positive rescaling
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Vec v(4);
    for (int i = 0; i < 4; ++i) v[i] = 0.1 + 3.0 * rng.uniform();
    const double lambda = 0.01 + 10.0 * rng.uniform();
    const ShapeClass a = classify({3, v});
    const ShapeClass b = classify({3, Vec(lambda * v)});
    CHECK(a.kind == b.kind);
    CHECK(a.index == b.index);
  }
}

TEST_CASE("sampler determinism and validity") {
  Rng a(1234), b(1234);
  const SimplexRealization sa = sample_gaussian_simplex(3, a);
  const SimplexRealization sb = sample_gaussian_simplex(3, b);
  for (int i = 0; i < 4; ++i)
    CHECK((sa.vertices[i] - sb.vertices[i]).norm() == 0.0);

  // bulk sampling never produces a degenerate simplex
  Rng rng(77);
  for (int i = 0; i < 10000; ++i) {
    const SimplexRealization s = sample_gaussian_simplex(3, rng);
    CHECK_NOTHROW(facet_volume_vector(s));
  }
}

TEST_CASE("facet map equivariance, isometry and scaling") {
  Rng rng(2024);
  const int d = 3;
  for (int trial = 0; trial < 30; ++trial) {
    const SimplexRealization s = sample_gaussian_simplex(d, rng);
    const FacetVolumeVector f = facet_volume_vector(s);

    // permuting vertices permutes facet volumes the same way
    std::vector<int> perm = {2, 0, 3, 1};
    SimplexRealization ps{d, {}};
    for (int i = 0; i < d + 1; ++i) ps.vertices.push_back(s.vertices[perm[i]]);
    const FacetVolumeVector pf = facet_volume_vector(ps);
    for (int i = 0; i < d + 1; ++i)
      CHECK(pf.values[i] == doctest::Approx(f.values[perm[i]]).epsilon(1e-12));

    // isometry invariance
    const Mat q = random_rotation(d, rng);
    const Vec t = rng.gaussian_vector(d);
    SimplexRealization ms{d, {}};
    for (const Vec& v : s.vertices) ms.vertices.push_back(q * v + t);
    const FacetVolumeVector mf = facet_volume_vector(ms);
    for (int i = 0; i < d + 1; ++i)
      CHECK(mf.values[i] == doctest::Approx(f.values[i]).epsilon(1e-10));

    // scaling by lambda scales facet volumes by lambda^(d-1)
    const double lambda = 0.2 + 2.0 * rng.uniform();
    SimplexRealization ls{d, {}};
    for (const Vec& v : s.vertices) ls.vertices.push_back(lambda * v);
    const FacetVolumeVector lf = facet_volume_vector(ls);
    for (int i = 0; i < d + 1; ++i)
      CHECK(lf.values[i] ==
            doctest::Approx(std::pow(lambda, d - 1) * f.values[i])
                .epsilon(1e-10));

    // every facet-volume vector lies strictly inside the cone
    const ConeVerdict verdict = cone_membership(f.values);
    CHECK(verdict.region == Region::Inside);
    CHECK(verdict.margin > 0.0);
  }
}
