#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "polyiso/error.hpp"
#include "polyiso/geometry.hpp"
#include "polyiso/polytope_io.hpp"
#include "support.hpp"

using namespace polyiso;
using testing::rel;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

// Regular triangle of inradius sqrt(2) (circumradius 2 sqrt(2)) in z = 0,
// apices (0, 0, +-1).
std::vector<Vec3> bipyramid_points() {
  return {{2 * kSqrt2, 0, 0}, {-kSqrt2, std::sqrt(6.0), 0}, {-kSqrt2, -std::sqrt(6.0), 0}, {0, 0, 1}, {0, 0, -1}};
}

std::vector<int> sorted_degrees(const Polytope3& p) {
  std::vector<int> d = vertex_degrees(triangulate_boundary(p));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("hull vertex and facet counts") {
  const Polytope3 cube = convex_hull(testing::cube_points(-1, 1));
  CHECK(cube.vertices().size() == 8);
  CHECK(cube.facets().size() == 6);

  const Polytope3 octa = convex_hull(testing::octahedron_points());
  CHECK(octa.vertices().size() == 6);
  CHECK(octa.facets().size() == 8);

  auto pts = testing::cube_points(-1, 1);
  pts.push_back({0, 0, 0});
  const Polytope3 with_center = convex_hull(pts);
  CHECK(with_center.vertices().size() == 8);
  for (const Vec3& v : with_center.vertices()) CHECK(norm(v) > 1.0);
  for (int s : with_center.source_indices()) CHECK(s != 8);
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(convex_hull(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), DegenerateInput);
  CHECK_THROWS_AS(convex_hull(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 3, 0}}),
                  DegenerateInput);
  CHECK_THROWS_AS(convex_hull(std::vector<Vec3>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}}), DegenerateInput);
}

TEST_CASE("volume, surface and ratio of the extremal bodies") {
  const Polytope3 cube = convex_hull(testing::cube_points());
  CHECK(volume(cube) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(surface_area(cube) == doctest::Approx(6.0).epsilon(1e-14));

  const Polytope3 octa = convex_hull(testing::octahedron_points());
  CHECK(rel(volume(octa), 4.0 / 3.0) < 1e-14);
  CHECK(rel(surface_area(octa), 4 * kSqrt3) < 1e-14);
  CHECK(rel(isoperimetric_ratio(octa), 108 * kSqrt3) < 1e-9);

  const Polytope3 tetra = convex_hull(testing::tetrahedron_points());
  CHECK(rel(volume(tetra), 8.0 / 3.0) < 1e-14);
  CHECK(rel(surface_area(tetra), 8 * kSqrt3) < 1e-14);
  CHECK(rel(isoperimetric_ratio(tetra), 216 * kSqrt3) < 1e-9);

  const Polytope3 bip = convex_hull(bipyramid_points());
  CHECK(rel(surface_area(bip), 18 * kSqrt2) < 1e-12);
  CHECK(rel(volume(bip), 4 * kSqrt3) < 1e-12);
  CHECK(rel(isoperimetric_ratio(bip), 243 * kSqrt2) < 1e-9);
}

TEST_CASE("boundary triangulations and degrees") {
  const Polytope3 octa = convex_hull(testing::octahedron_points());
  const TriangulatedBoundary t = triangulate_boundary(octa);
  CHECK(t.triangles.size() == 8);
  CHECK(is_valid_triangulation(t));
  CHECK(sorted_degrees(octa) == std::vector<int>(6, 4));

  const Polytope3 cube = convex_hull(testing::cube_points());
  const TriangulatedBoundary tc = triangulate_boundary(cube);
  CHECK(tc.triangles.size() == 12);
  const auto dc = vertex_degrees(tc);
  CHECK(std::accumulate(dc.begin(), dc.end(), 0) == 6 * 8 - 12);

  CHECK(sorted_degrees(convex_hull(testing::tetrahedron_points())) == std::vector<int>{3, 3, 3, 3});
  CHECK(sorted_degrees(convex_hull(bipyramid_points())) == std::vector<int>{3, 3, 4, 4, 4});
}

TEST_CASE("insphere") {
  const Insphere c = insphere(convex_hull(testing::cube_points()));
  CHECK(c.radius == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(norm(c.center - Vec3{0.5, 0.5, 0.5}) < 1e-12);
  CHECK(c.touching.size() == 6);

  const Polytope3 octa = convex_hull(testing::octahedron_points());
  const Insphere o = insphere(octa);
  CHECK(rel(o.radius, 1 / kSqrt3) < 1e-12);
  CHECK(o.touching.size() == 8);
  CHECK(rel(27 * volume(octa) / std::pow(o.radius, 3), 108 * kSqrt3) < 1e-9);

  const Polytope3 bip = convex_hull(bipyramid_points());
  const Insphere b = insphere(bip);
  CHECK(rel(b.radius, kSqrt2 / kSqrt3) < 1e-12);
  CHECK(b.touching.size() == 6);
  CHECK(rel(27 * volume(bip) / std::pow(b.radius, 3), 243 * kSqrt2) < 1e-9);
}

TEST_CASE("projections") {
  CHECK(project(convex_hull(testing::cube_points()), {0, 0, 1}).area() == doctest::Approx(1.0));
  const Polygon2 sq = project(convex_hull(testing::octahedron_points()), {0, 0, 1});
  CHECK(sq.vertices.size() == 4);
  CHECK(sq.area() == doctest::Approx(2.0));
  const Polygon2 tp = project(convex_hull(testing::tetrahedron_points()), {0, 0, 1});
  CHECK(tp.vertices.size() == 4);
  CHECK(tp.area() == doctest::Approx(4.0));
}

TEST_CASE("random polytope invariants") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> count(4, 12);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pts = testing::random_cloud(rng, count(rng), 6.5);
    const Polytope3 p = convex_hull(pts);
    const double v = volume(p);
    const double s = surface_area(p);
    const double r = isoperimetric_ratio(p);

    // Idempotence of the hull.
    const Polytope3 again = convex_hull(p.vertices());
    REQUIRE(again.vertices().size() == p.vertices().size());

    // Rigid motions.
    const testing::Rotation rot(rng);
    const Vec3 shift = testing::random_in_ball(rng, 5.0);
    std::vector<Vec3> moved;
    for (const Vec3& x : pts) moved.push_back(rot(x) + shift);
    const Polytope3 m = convex_hull(moved);
    REQUIRE(rel(volume(m), v) < 1e-9);
    REQUIRE(rel(surface_area(m), s) < 1e-9);

    // Scaling.
    const double lambda = scale(rng);
    std::vector<Vec3> scaled;
    for (const Vec3& x : pts) scaled.push_back(lambda * x);
    const Polytope3 q = convex_hull(scaled);
    REQUIRE(rel(volume(q), lambda * lambda * lambda * v) < 1e-9);
    REQUIRE(rel(surface_area(q), lambda * lambda * s) < 1e-9);
    REQUIRE(rel(isoperimetric_ratio(q), r) < 1e-9);

    // Degree sum.
    const TriangulatedBoundary t = triangulate_boundary(p);
    REQUIRE(is_valid_triangulation(t));
    const auto d = vertex_degrees(t);
    const int n = static_cast<int>(p.vertices().size());
    REQUIRE(std::accumulate(d.begin(), d.end(), 0) == 6 * n - 12);
    for (int k : d) REQUIRE((k >= 3 && k <= n - 1));

    // Ball bound.
    const Insphere ball = insphere(p);
    REQUIRE(ball.radius > 0.0);
    REQUIRE(ball.radius <= 6.5);
    REQUIRE(p.diameter() <= 13.0);
    for (const Facet& f : p.facets()) REQUIRE(-f.signed_distance(ball.center) >= ball.radius * (1 - 1e-9));
    if (ball.touching.size() == p.facets().size()) {
      REQUIRE(rel(r, 27 * v / std::pow(ball.radius, 3)) < 1e-9);
    }
  }
}

TEST_CASE("polytope files") {
  const auto json = parse_points(R"({"vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]]})");
  CHECK(json.size() == 4);
  const auto off = parse_points("OFF\n# comment\n4 0 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n");
  CHECK(off.size() == 4);
  CHECK(off[3] == Vec3{0, 0, 1});
  CHECK_THROWS_AS(parse_points("{\"vertices\": [[0, 0]]}"), ParseError);
  CHECK_THROWS_AS(parse_points("not a polytope"), ParseError);

  const Polytope3 octa = load_polytope(POLYISO_TEST_DATA "/octahedron.off");
  CHECK(rel(isoperimetric_ratio(octa), 108 * kSqrt3) < 1e-9);
  const Polytope3 round = convex_hull(parse_points(polytope_to_json(octa)));
  CHECK(round.vertices().size() == 6);
}
