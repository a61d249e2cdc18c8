#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fvol/minkowski.hpp"
#include "fvol/simplex.hpp"

using namespace fvol;

namespace {

Vec make_vec(std::initializer_list<double> xs) {
  Vec v(xs.size());
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vec vec2(double a, double b) { return make_vec({a, b}); }
Vec vec3(double a, double b, double c) { return make_vec({a, b, c}); }

HPolytope unit_square() {
  return {2,
          {vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1)},
          make_vec({1, 1, 1, 1})};
}

HPolytope unit_cube() {
  return {3,
          {vec3(1, 0, 0), vec3(-1, 0, 0), vec3(0, 1, 0), vec3(0, -1, 0),
           vec3(0, 0, 1), vec3(0, 0, -1)},
          make_vec({0.5, 0.5, 0.5, 0.5, 0.5, 0.5})};
}

// H-representation of the 3-4-5 triangle (0,0), (4,0), (0,3)
HPolytope triangle345_h() {
  const Vec hyp = vec2(3.0 / 5.0, 4.0 / 5.0);
  return {2, {hyp, vec2(-1, 0), vec2(0, -1)}, make_vec({12.0 / 5.0, 0, 0})};
}

// regular tetrahedron with edge 1 given by vertices; H-rep built from the
// facet planes through each vertex triple
struct TetData {
  std::vector<Vec> vertices;
  HPolytope hull;
};

TetData regular_tetrahedron() {
  const double s3 = std::sqrt(3.0);
  TetData t;
  t.vertices = {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0.5, s3 / 2.0, 0),
                vec3(0.5, s3 / 6.0, std::sqrt(6.0) / 3.0)};
  Vec center = Vec::Zero(3);
  for (const Vec& v : t.vertices) center += v / 4.0;

  t.hull.ambient_dim = 3;
  t.hull.offsets = Vec(4);
  int row = 0;
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<Vec> tri;
    for (int j = 0; j < 4; ++j)
      if (j != skip) tri.push_back(t.vertices[j]);
    const Vec e1 = tri[1] - tri[0], e2 = tri[2] - tri[0];
    Vec n = vec3(e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                 e1[0] * e2[1] - e1[1] * e2[0]);
    n /= n.norm();
    if (n.dot(center - tri[0]) > 0) n = -n;
    t.hull.normals.push_back(n);
    t.hull.offsets[row++] = n.dot(tri[0]);
  }
  return t;
}

UnitNormalSystem cube_system() {
  return {3,
          make_vec({1, 1, 1, 1, 1, 1}),
          {vec3(1, 0, 0), vec3(-1, 0, 0), vec3(0, 1, 0), vec3(0, -1, 0),
           vec3(0, 0, 1), vec3(0, 0, -1)}};
}

double max_rel_error(const Vec& got, const Vec& want) {
  double err = 0.0;
  for (int i = 0; i < got.size(); ++i)
    err = std::max(err, std::abs(got[i] - want[i]) / want[i]);
  return err;
}

}  // namespace

TEST_CASE("vertex enumeration of reference bodies") {
  const VPolytope square = enumerate_vertices(unit_square());
  CHECK(square.vertices.size() == 4);
  for (const Vec& v : square.vertices) {
    CHECK(std::abs(std::abs(v[0]) - 1.0) <= 1e-12);
    CHECK(std::abs(std::abs(v[1]) - 1.0) <= 1e-12);
  }

  // equilateral triangle from its three edge halfspaces
  const double s3 = std::sqrt(3.0);
  HPolytope tri{2,
                {vec2(0, 1), vec2(-s3 / 2.0, -0.5), vec2(s3 / 2.0, -0.5)},
                make_vec({s3 / 6.0, s3 / 6.0, s3 / 6.0})};
  const VPolytope tv = enumerate_vertices(tri);
  CHECK(tv.vertices.size() == 3);
  for (const Vec& v : tv.vertices)
    CHECK(v.norm() == doctest::Approx(s3 / 3.0).epsilon(1e-10));

  // octahedron halfspaces give the six +-sqrt(3) e_i corners
  HPolytope octa;
  octa.ambient_dim = 3;
  std::vector<double> offs;
  for (int s = 0; s < 8; ++s)
    octa.normals.push_back(vec3(s & 1 ? 1 : -1, s & 2 ? 1 : -1,
                                s & 4 ? 1 : -1) /
                           s3);
  octa.offsets = Vec::Ones(8);
  const VPolytope ov = enumerate_vertices(octa);
  REQUIRE(ov.vertices.size() == 6);
  for (const Vec& v : ov.vertices) {
    CHECK(v.norm() == doctest::Approx(s3).epsilon(1e-10));
    CHECK(v.cwiseAbs().maxCoeff() == doctest::Approx(s3).epsilon(1e-10));
  }
}

TEST_CASE("vertex enumeration failure modes") {
  // slab: normals do not positively span
  HPolytope slab{2, {vec2(1, 0), vec2(-1, 0), vec2(0, 1)}, make_vec({1, 1, 1})};
  CHECK_THROWS_AS(enumerate_vertices(slab), UnboundedPolytope);

  // empty intersection
  HPolytope empty{2,
                  {vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1)},
                  make_vec({-2, 1, 1, 1})};
  CHECK_THROWS_AS(enumerate_vertices(empty), EmptyPolytope);
}

TEST_CASE("facet geometry of reference bodies") {
  const HPolytope cube = unit_cube();
  const PolytopeGeometry cg = facet_geometry(cube, enumerate_vertices(cube));
  for (int i = 0; i < 6; ++i)
    CHECK(cg.facet_areas[i] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cg.volume == doctest::Approx(1.0).epsilon(1e-12));

  const HPolytope tri = triangle345_h();
  const PolytopeGeometry tg = facet_geometry(tri, enumerate_vertices(tri));
  CHECK(tg.facet_areas[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(tg.facet_areas[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(tg.facet_areas[2] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(tg.volume == doctest::Approx(6.0).epsilon(1e-12));

  // regular tetrahedron: areas and volume, cross-checked against the
  // Gram-determinant volume of the vertex representation
  const TetData tet = regular_tetrahedron();
  const PolytopeGeometry gg =
      facet_geometry(tet.hull, enumerate_vertices(tet.hull));
  const double s3 = std::sqrt(3.0);
  for (int i = 0; i < 4; ++i)
    CHECK(gg.facet_areas[i] == doctest::Approx(s3 / 4.0).epsilon(1e-10));
  CHECK(gg.volume ==
        doctest::Approx(std::sqrt(2.0) / 12.0).epsilon(1e-10));
  CHECK(gg.volume == doctest::Approx(gram_volume(tet.vertices)).epsilon(1e-10));
}

TEST_CASE("minkowski balance and volume identity on random support bodies") {
  Rng rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform() * 3);  // 2..4
    const int n = d + 2 + static_cast<int>(rng.uniform() * 3);
    HPolytope h;
    h.ambient_dim = d;
    h.offsets = Vec(n);
    for (int i = 0; i < n; ++i) {
      h.normals.push_back(rng.unit_vector(d));
      h.offsets[i] = 0.5 + rng.uniform();
    }
    VPolytope v;
    try {
      v = enumerate_vertices(h);
    } catch (const Error&) {
      continue;  // randomly unbounded or empty arrangements are skipped
    }
    if (static_cast<int>(v.vertices.size()) < d + 1) continue;
    PolytopeGeometry geo;
    try {
      geo = facet_geometry(h, v);
    } catch (const DegenerateGeometry&) {
      continue;
    }

    Vec balance = Vec::Zero(d);
    double total_area = 0.0;
    double vol_from_support = 0.0;
    Vec c = Vec::Zero(d);
    for (const Vec& x : v.vertices) c += x / v.vertices.size();
    for (int i = 0; i < n; ++i) {
      balance += geo.facet_areas[i] * h.normals[i];
      total_area += geo.facet_areas[i];
      vol_from_support +=
          (h.offsets[i] - h.normals[i].dot(c)) * geo.facet_areas[i];
    }
    CHECK(balance.norm() <= 1e-9 * total_area);
    CHECK(vol_from_support / d ==
          doctest::Approx(geo.volume).epsilon(1e-9));
  }
}

TEST_CASE("area jacobian matches finite differences") {
  Rng rng(55);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 2 + trial % 2;  // 2 and 3
    const int n = d + 3;
    HPolytope h;
    h.ambient_dim = d;
    h.offsets = Vec(n);
    for (int i = 0; i < n; ++i) {
      h.normals.push_back(rng.unit_vector(d));
      h.offsets[i] = 1.0 + 0.2 * rng.uniform();
    }
    VPolytope v;
    PolytopeGeometry geo;
    try {
      v = enumerate_vertices(h);
      geo = facet_geometry(h, v);
    } catch (const Error&) {
      continue;
    }
    bool has_empty_facet = false;
    for (int i = 0; i < n; ++i)
      if (geo.facet_areas[i] <= 1e-9) has_empty_facet = true;
    if (has_empty_facet) continue;

    const Mat jac = area_jacobian(h, geo);

    // homogeneity: J h = (d-1) areas
    const Vec euler = jac * h.offsets;
    for (int i = 0; i < n; ++i)
      CHECK(euler[i] ==
            doctest::Approx((d - 1) * geo.facet_areas[i]).epsilon(1e-8));

    // central differences
    const double eps = 1e-6;
    for (int j = 0; j < n; ++j) {
      HPolytope hp = h, hm = h;
      hp.offsets[j] += eps;
      hm.offsets[j] -= eps;
      const PolytopeGeometry gp = facet_geometry(hp, enumerate_vertices(hp));
      const PolytopeGeometry gm = facet_geometry(hm, enumerate_vertices(hm));
      for (int i = 0; i < n; ++i) {
        const double fd = (gp.facet_areas[i] - gm.facet_areas[i]) / (2 * eps);
        CHECK(jac(i, j) == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
      }
    }
  }
}

TEST_CASE("reconstruct reference solids") {
  // equilateral normals with unit weights give the side-1 triangle
  const double s3 = std::sqrt(3.0);
  UnitNormalSystem tri{2,
                       make_vec({1, 1, 1}),
                       {vec2(0, 1), vec2(-s3 / 2.0, -0.5), vec2(s3 / 2.0, -0.5)}};
  const ReconstructResult tr = reconstruct(tri);
  CHECK(tr.max_rel_error <= 1e-8);
  for (int i = 0; i < 3; ++i)
    CHECK(tr.geometry.facet_areas[i] == doctest::Approx(1.0).epsilon(1e-8));
  // side-1 equilateral triangle area
  CHECK(tr.geometry.volume == doctest::Approx(s3 / 4.0).epsilon(1e-7));

  // cube
  const ReconstructResult cr = reconstruct(cube_system());
  for (int i = 0; i < 6; ++i)
    CHECK(cr.geometry.facet_areas[i] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(cr.geometry.volume == doctest::Approx(1.0).epsilon(1e-7));

  // 3-4-5 triangle normals with the matching weights
  const HPolytope t345 = triangle345_h();
  UnitNormalSystem sys345{2, make_vec({5, 3, 4}), t345.normals};
  const ReconstructResult rr = reconstruct(sys345);
  CHECK(rr.geometry.facet_areas[0] == doctest::Approx(5.0).epsilon(1e-7));
  CHECK(rr.geometry.facet_areas[1] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(rr.geometry.facet_areas[2] == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(rr.geometry.volume == doctest::Approx(6.0).epsilon(1e-7));
}

TEST_CASE("reconstruct diagnostics and canonicalization") {
  const ReconstructResult res = reconstruct(cube_system());

  // accepted errors never increase
  for (size_t i = 1; i < res.accepted_errors.size(); ++i)
    CHECK(res.accepted_errors[i] <= res.accepted_errors[i - 1]);

  // vertex centroid pinned to the origin
  Vec c = Vec::Zero(3);
  double radius = 0.0;
  for (const Vec& v : res.geometry.vertices.vertices) {
    c += v / res.geometry.vertices.vertices.size();
    radius = std::max(radius, v.norm());
  }
  CHECK(c.norm() <= 1e-10 * radius);
}

TEST_CASE("reconstruct validates its input system") {
  UnitNormalSystem bad = cube_system();
  bad.weights[0] = -1.0;
  CHECK_THROWS_AS(reconstruct(bad), InvalidSystem);

  UnitNormalSystem dup = cube_system();
  dup.normals[1] = dup.normals[0];
  CHECK_THROWS_AS(reconstruct(dup), InvalidSystem);

  UnitNormalSystem unbalanced = cube_system();
  unbalanced.weights = make_vec({2, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(reconstruct(unbalanced), InvalidSystem);

  UnitNormalSystem flat{2,
                        make_vec({1, 1}),
                        {vec2(1, 0), vec2(-1, 0)}};
  CHECK_THROWS_AS(reconstruct(flat), InvalidSystem);
}

TEST_CASE("facet volume vector of a polytope") {
  const FacetVolumeVector cube_f = facet_volume_vector_of_polytope(unit_cube());
  for (int i = 0; i < 6; ++i) CHECK(cube_f.values[i] == doctest::Approx(1.0));
  CHECK(cone_membership(cube_f.values).region == Region::Inside);

  // redundant halfspace x <= 5 added to the unit square
  HPolytope square = unit_square();
  square.normals.push_back(vec2(1, 0));
  Vec offs(5);
  offs << 1, 1, 1, 1, 5;
  square.offsets = offs;
  try {
    facet_volume_vector_of_polytope(square);
    FAIL("expected RedundantHalfspace");
  } catch (const RedundantHalfspace& e) {
    REQUIRE(e.indices.size() == 1);
    CHECK(e.indices[0] == 5);
  }
}

TEST_CASE("round trip through reconstruct on random cone points") {
  Rng rng(888);
  for (int trial = 0; trial < 15; ++trial) {
    const int d = 2 + trial % 3;
    const int n = d + 1 + trial % 3;
    Vec alpha(n);
    ConeVerdict verdict;
    do {
      for (int i = 0; i < n; ++i) alpha[i] = 0.2 + rng.uniform();
      verdict = cone_membership(alpha);
    } while (verdict.region != Region::Inside);

    Rng solver_rng(trial);
    const UnitNormalSystem sys = solve_normals(alpha, d, solver_rng);
    const ReconstructResult res = reconstruct(sys);
    CHECK(res.iterations <= 500);
    const FacetVolumeVector back = facet_volume_vector_of_polytope(res.hull);
    CHECK(max_rel_error(back.values, alpha) <= 1e-6);
  }
}
