#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "polyiso/error.hpp"
#include "polyiso/symmetrize.hpp"
#include "support.hpp"

using namespace polyiso;
using testing::rel;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Length of the chord {a + t u} through the original polytope, from its
// facet inequalities alone.
double chord(const Polytope3& p, Vec3 a, Vec3 u) {
  double lo = -INFINITY, hi = INFINITY;
  for (const Facet& f : p.facets()) {
    const double nu = dot(f.normal, u);
    const double slack = f.offset - dot(f.normal, a);
    if (std::abs(nu) < 1e-15) {
      if (slack < 0) return 0.0;
      continue;
    }
    if (nu > 0) hi = std::min(hi, slack / nu);
    else lo = std::max(lo, slack / nu);
  }
  return hi > lo ? hi - lo : 0.0;
}

bool same_vertex_set(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Vec3& x : a) {
    if (std::none_of(b.begin(), b.end(), [&](const Vec3& y) { return norm(x - y) <= tol; })) return false;
  }
  return true;
}

std::vector<int> sorted_degrees(const TriangulatedBoundary& t) {
  auto d = vertex_degrees(t);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("envelopes") {
  const Envelopes cube = envelopes(convex_hull(testing::cube_points()), {0, 0, 1});
  for (Vec2 q : {Vec2{0.2, 0.3}, Vec2{0.9, 0.1}, Vec2{0.5, 0.5}}) {
    CHECK(cube.upper(q) == doctest::Approx(1.0));
    CHECK(cube.lower(q) == doctest::Approx(0.0));
  }
  const Envelopes octa = envelopes(convex_hull(testing::octahedron_points()), {0, 0, 1});
  for (Vec2 q : {Vec2{0.2, 0.3}, Vec2{-0.4, 0.1}, Vec2{0.0, -0.7}}) {
    const double expected = 1 - std::abs(q.x) - std::abs(q.y);
    CHECK(octa.upper(q) == doctest::Approx(expected));
    CHECK(octa.lower(q) == doctest::Approx(expected));
  }
  const Envelopes tet = envelopes(convex_hull(testing::tetrahedron_points()), {0, 0, 1});
  CHECK(tet.upper.pieces.size() == 2);
  CHECK(tet.lower.pieces.size() == 2);
  CHECK(tet.upper.domain.area() == doctest::Approx(4.0));

  // Both f and g are concave: midpoint inequality on random chords.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Polytope3 p = convex_hull(testing::random_cloud(rng, 9, 3.0));
    const Envelopes env = envelopes(p, testing::random_unit(rng));
    const auto& dom = env.upper.domain.vertices;
    auto inside = [&] {
      Vec2 q{0, 0};
      double total = 0.0;
      for (const Vec2& v : dom) {
        const double c = w(rng);
        q = q + c * v;
        total += c;
      }
      return (1.0 / total) * q;
    };
    for (int k = 0; k < 20; ++k) {
      const Vec2 a = inside(), b = inside(), m = 0.5 * (a + b);
      REQUIRE(env.upper(m) >= 0.5 * (env.upper(a) + env.upper(b)) - 1e-9);
      REQUIRE(env.lower(m) >= 0.5 * (env.lower(a) + env.lower(b)) - 1e-9);
      REQUIRE(env.upper(a) + env.lower(a) >= -1e-9);
    }
  }
}

TEST_CASE("symmetrals of simple bodies") {
  const Polytope3 octa = convex_hull(testing::octahedron_points());
  const Polytope3 so = steiner_symmetral(octa, {0, 0, 1});
  CHECK(same_vertex_set(so.vertices(), octa.vertices(), 1e-12));

  const Polytope3 cube = convex_hull(testing::cube_points());
  const Polytope3 sc = steiner_symmetral(cube, {0, 0, 1});
  for (const Vec3& v : sc.vertices()) CHECK(std::abs(std::abs(v.z) - 0.5) < 1e-12);
  CHECK(volume(sc) == doctest::Approx(1.0));
  CHECK(surface_area(sc) == doctest::Approx(6.0));
  CHECK(is_translate(sc, cube, 1e-9));
}

// Monte-Carlo volume of {x : |x.u| <= chord(x)/2} over the cube [-2, 2]^3.
static void check_chord_volume(const Polytope3& p, Vec3 u, double expected) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  const int n = 400000;
  int inside = 0;
  for (int k = 0; k < n; ++k) {
    const Vec3 x{c(rng), c(rng), c(rng)};
    const double t = dot(x, u);
    if (std::abs(t) <= 0.5 * chord(p, x - t * u, u)) ++inside;
  }
  const double frac = static_cast<double>(inside) / n;
  const double sigma = 64.0 * std::sqrt(frac * (1 - frac) / n);
  CHECK(std::abs(64.0 * frac - expected) < 4 * sigma);
}

TEST_CASE("tetrahedron symmetrals against a chord oracle") {
  const auto pts = testing::tetrahedron_points();
  const Polytope3 tet = convex_hull(pts);

  // The plane orthogonal to an edge through the centroid is a mirror of the
  // regular tetrahedron, so this symmetral is the body itself.
  const Vec3 edge = normalized(pts[0] - pts[1]);
  const Polytope3 fixed = steiner_symmetral(tet, edge);
  CHECK(same_vertex_set(fixed.vertices(), tet.vertices(), 1e-12));
  CHECK(rel(surface_area(fixed), 8 * kSqrt3) < 1e-12);
  check_chord_volume(tet, edge, volume(fixed));

  const Vec3 u = normalized(Vec3{1, 2, 3});
  const Polytope3 s = steiner_symmetral(tet, u);
  CHECK(rel(volume(s), 8.0 / 3.0) < 1e-12);
  CHECK(surface_area(s) < 8 * kSqrt3 * (1 - 1e-6));
  CHECK_FALSE(is_translate(s, tet, 1e-7));
  check_chord_volume(tet, u, volume(s));
}

TEST_CASE("apex pairs") {
  const TriangulatedBoundary octa = triangulate_boundary(convex_hull(testing::octahedron_points()));
  const auto po = find_apex_pair(octa);
  REQUIRE(po);
  CHECK(is_apex_pair(octa, *po));
  CHECK_FALSE(adjacency(octa)[po->i][po->j]);

  // Triangle (0,0,+-1) base, apices along the x-axis.
  const std::vector<Vec3> bp = {{0, 1, 0}, {0, -0.5, 0.8}, {0, -0.5, -0.8}, {1.3, 0, 0}, {-0.9, 0.1, 0}};
  const TriangulatedBoundary tb = triangulate_boundary(convex_hull(bp));
  const auto pb = find_apex_pair(tb);
  REQUIRE(pb);
  CHECK(is_apex_pair(tb, *pb));

  // Octahedron with one vertex pushed out over a face: a degree-3 vertex,
  // and the apex pair is formed by the two degree-5 vertices.
  const std::vector<Vec3> pushed = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0.9, 0.9, 0.9}};
  const TriangulatedBoundary tp = triangulate_boundary(convex_hull(pushed));
  const auto deg = vertex_degrees(tp);
  CHECK(std::count(deg.begin(), deg.end(), 3) >= 1);
  const auto pp = find_apex_pair(tp);
  REQUIRE(pp);
  CHECK(deg[pp->i] == 5);
  CHECK(deg[pp->j] == 5);

  // Adjacent octahedron vertices miss the triangle opposite to their edge.
  int a = 0, b = 1;
  while (!adjacency(octa)[a][b]) ++b;
  CHECK_FALSE(is_apex_pair(octa, {a, b}));
  CHECK_THROWS_AS(bipyramid_symmetral(octa, {a, b}), InvalidApexPair);
  CHECK_THROWS_AS(bipyramid_symmetral(octa, {a, a}), InvalidApexPair);

  // Fan triangulation of the cube: every diagonal meets vertex 0 or 7.
  const TriangulatedBoundary cube = triangulate_boundary(convex_hull(testing::cube_points()));
  const auto pc = find_apex_pair(cube);
  REQUIRE(pc);
  CHECK(pc->i == 0);
  CHECK(pc->j == 7);
}

TEST_CASE("bipyramid symmetrals") {
  // Already a double pyramid over the pair: the result is a translate.
  const std::vector<Vec3> dp = {{0.3, 0.2, 2.0}, {0.3, 0.2, -1.0}, {1, 0, 0.5}, {-0.5, 0.8, 0.5}, {-0.5, -0.8, 0.5}};
  const Polytope3 p = convex_hull(dp);
  const TriangulatedBoundary t = triangulate_boundary(p);
  int top = -1, bottom = -1;
  for (int k = 0; k < 5; ++k) {
    if (p.source_indices()[k] == 0) top = k;
    if (p.source_indices()[k] == 1) bottom = k;
  }
  const BipyramidSymmetral s = bipyramid_symmetral(t, {top, bottom});
  CHECK(is_translate(s.polytope, p, 1e-9));

  // A 5-vertex body in general position.
  const std::vector<Vec3> g = {{0, 0, 0}, {2, 0.1, 0.3}, {0.4, 1.7, -0.2}, {0.5, 0.6, 1.9}, {0.9, 0.2, -1.1}};
  const TriangulatedBoundary tg = triangulate_boundary(convex_hull(g));
  const auto pg = find_apex_pair(tg);
  REQUIRE(pg);
  const BipyramidSymmetral sg = bipyramid_symmetral(tg, *pg);
  CHECK(sg.polytope.vertices().size() == 5);
  CHECK(isomorphic(tg, sg.triangulation));
  CHECK(sorted_degrees(sg.triangulation) == sorted_degrees(tg));
  CHECK(rel(volume(sg.polytope), volume(tg.base)) < 1e-9);
  CHECK(surface_area(sg.polytope) <= surface_area(tg.base) * (1 + 1e-12));
}

TEST_CASE("octahedral pipeline and the Jensen bound") {
  const auto r = octahedral_pipeline(convex_hull(testing::octahedron_points()));
  for (double t : r.half_diagonals) CHECK(t == doctest::Approx(1.0).epsilon(1e-12));

  auto h = octahedral_pipeline(convex_hull(testing::octahedron_points(2, 1, 1))).half_diagonals;
  std::sort(h.begin(), h.end());
  CHECK(h[0] == doctest::Approx(1.0));
  CHECK(h[1] == doctest::Approx(1.0));
  CHECK(h[2] == doctest::Approx(2.0));

  CHECK_THROWS_AS(octahedral_pipeline(convex_hull(testing::cube_points())), NotOctahedralType);
  CHECK_THROWS_AS(octahedral_pipeline(convex_hull(testing::tetrahedron_points())), NotOctahedralType);

  CHECK(rel(jensen_bound(1, 1, 1), 108 * kSqrt3) < 1e-14);
  CHECK(rel(jensen_bound(2, 1, 1), 243.0) < 1e-14);
  // 144 (2 + 1/16)^(3/2), frozen from a 40-digit evaluation.
  CHECK(rel(jensen_bound(1, 1, 4), 426.5337765054486280) < 1e-14);
  CHECK(rel(jensen_bound(1, 1, 4), isoperimetric_ratio(convex_hull(testing::octahedron_points(1, 1, 4)))) < 1e-9);
  CHECK_THROWS_AS(jensen_bound(0, 1, 1), DomainError);
}

TEST_CASE("Schwarz rounding bound") {
  // 27 sqrt(3) pi, the minimum over q.
  CHECK(rel(schwarz_lower_bound(M_PI / 2), 146.9177485029716459) < 1e-14);
  CHECK(rel(schwarz_lower_bound(0.411), 188.0051362557701403) < 1e-14);
  CHECK(rel(schwarz_lower_bound(15), 359.1203307298161282) < 1e-14);
  CHECK(schwarz_lower_bound(0.411) > 188.0);
  CHECK(schwarz_lower_bound(M_PI / 2 - 1e-3) > schwarz_lower_bound(M_PI / 2));
  CHECK(schwarz_lower_bound(M_PI / 2 + 1e-3) > schwarz_lower_bound(M_PI / 2));
  CHECK_THROWS_AS(schwarz_lower_bound(0.0), DomainError);
}

TEST_CASE("random symmetral invariants") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> count(4, 10);
  for (int trial = 0; trial < 150; ++trial) {
    const Polytope3 p = convex_hull(testing::random_cloud(rng, count(rng), 6.5));
    const Vec3 u = testing::random_unit(rng);
    const Polytope3 s = steiner_symmetral(p, u);
    REQUIRE(rel(volume(s), volume(p)) < 1e-8);
    REQUIRE(surface_area(s) <= surface_area(p) * (1 + 1e-8));
    double radius = 0.0;
    for (const Vec3& v : p.vertices()) radius = std::max(radius, norm(v));
    for (const Vec3& v : s.vertices()) REQUIRE(norm(v) <= radius + 1e-9);

    REQUIRE(testing::hull_distance(testing::reflected(s, u), s) <= 1e-9 * p.diameter());
    REQUIRE(testing::hull_distance(steiner_symmetral(s, u), s) <= 1e-9 * p.diameter());
  }
}

TEST_CASE("random octahedral bodies") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  int used = 0;
  for (int trial = 0; trial < 200 && used < 60; ++trial) {
    auto pts = testing::octahedron_points(1.0 + jitter(rng), 1.5 + jitter(rng), 0.8 + jitter(rng));
    for (Vec3& v : pts) v += Vec3{jitter(rng), jitter(rng), jitter(rng)};
    const Polytope3 p = convex_hull(pts);
    const TriangulatedBoundary t = triangulate_boundary(p);
    if (sorted_degrees(t) != std::vector<int>(6, 4)) continue;
    ++used;
    const auto r = octahedral_pipeline(p);
    const auto& h = r.half_diagonals;
    REQUIRE(rel(4.0 / 3.0 * h[0] * h[1] * h[2], volume(p)) < 1e-9);
    const double j = jensen_bound(h[0], h[1], h[2]);
    REQUIRE(j >= 108 * kSqrt3 * (1 - 1e-12));
    REQUIRE(j <= isoperimetric_ratio(p) * (1 + 1e-7));
  }
  CHECK(used >= 30);
}
