#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "polyiso/error.hpp"
#include "polyiso/strange.hpp"
#include "support.hpp"

using namespace polyiso;
using testing::rel;

namespace {

std::array<Vec2, 6> base_polygon(const StrangeParams& p) {
  return {Vec2{0, 0}, {p.x1, p.y1}, {p.x2, p.y2}, {p.x3, 0}, {p.x2, -p.y2}, {p.x1, -p.y1}};
}

double shoelace(const std::array<Vec2, 6>& q) {
  double a = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) a += cross(q[i], q[(i + 1) % q.size()]);
  return 0.5 * std::abs(a);
}

// Uniform draws from [0, cap]^5 with sorted x, kept when feasible.
StrangeParams random_feasible(std::mt19937_64& rng, const FeasibilityProfile& profile) {
  std::uniform_real_distribution<double> u(0.0, profile.coord_max);
  while (true) {
    double x[3] = {u(rng), u(rng), u(rng)};
    std::sort(x, x + 3);
    const StrangeParams p{x[0], x[1], x[2], u(rng), u(rng)};
    if (feasible(p, profile)) return p;
  }
}

}  // namespace

TEST_CASE("closed forms") {
  const StrangeParams unit{0, 1, 1, 1, 1};
  CHECK(rel(strange_V(unit), 4.0 / 3.0) < 1e-15);
  CHECK(rel(strange_S(unit), 7.656854249492380195) < 1e-15);
  CHECK(rel(base_area(unit), 2.0) < 1e-15);
  CHECK(strange_V({0, 0, 2.5, 0, 0}) == 0.0);
  // 2 + 2 sqrt(3)
  const StrangeParams thin{0, 0, 1, 0, 1};
  CHECK(rel(strange_S(thin), 5.464101615137754587) < 1e-15);
  CHECK(rel(strange_S(thin), surface_area(realize(thin).polytope)) < 1e-12);
  CHECK(rel(strange_G(unit), 114.6793647554425064) < 1e-13);
}

TEST_CASE("feasibility") {
  const FeasibilityProfile six = FeasibilityProfile::six_vertex();
  CHECK(six.area_min == 0.411);
  CHECK(six.coord_max == 6.5);
  CHECK(feasible({0, 1, 1, 1, 1}, six));

  const StrangeParams small{0, 0.1, 0.2, 0.1, 0.1};
  CHECK(satisfies_ordering(small));
  CHECK(satisfies_convexity(small));
  CHECK_FALSE(feasible(small, six));

  CHECK_FALSE(feasible({1, 2, 3, 1, 7}, six));
  CHECK_FALSE(feasible({2, 1, 3, 1, 1}, six));
  CHECK_FALSE(satisfies_convexity({1, 2, 3, 1, 3}));
  CHECK(satisfies_convexity({0, 1, 2, 1, 3}));

  CHECK(FeasibilityProfile::five_vertex().area_min == 0.09);
  CHECK(FeasibilityProfile::five_vertex().coord_max == 17.0);
  CHECK(FeasibilityProfile::five_vertex_text().area_min == 0.18);
  CHECK(FeasibilityProfile::five_vertex_text().coord_max == 11.0);
  CHECK(FeasibilityProfile::by_name("five_vertex_text").name == "five_vertex_text");
  CHECK_THROWS_AS(FeasibilityProfile::by_name("seven_vertex"), DomainError);
}

TEST_CASE("realization") {
  const StrangeBody body = realize({0, 1, 1, 1, 1});
  CHECK(body.polytope.vertices().size() == 6);
  CHECK(body.absorbed == std::vector<std::string>{"o", "w3"});
  for (const Vec3& v : body.polytope.vertices()) {
    const Vec3 m{v.x, -v.y, v.z};
    CHECK(std::any_of(body.polytope.vertices().begin(), body.polytope.vertices().end(),
                      [&](const Vec3& w) { return norm(w - m) < 1e-15; }));
  }

  // o, w1 and w2 collinear.
  const StrangeBody flat = realize({1, 2, 3, 1, 2});
  CHECK(std::find(flat.absorbed.begin(), flat.absorbed.end(), "w1") != flat.absorbed.end());

  CHECK_THROWS_AS(realize({2, 1, 3, 1, 1}), DomainError);
  CHECK_THROWS_AS(realize({0, 0, 0, 0, 0}), DegenerateInput);
}

TEST_CASE("bipyramid family") {
  const double s2 = std::sqrt(2.0);
  CHECK(rel(strange5_ratio(s2), 243 * s2) < 1e-14);
  CHECK(rel(strange5_ratio(1.0), 264.5448922205832346) < 1e-14);
  CHECK(rel(strange5_ratio(1 / s2), 243.0) < 1e-14);
  CHECK_THROWS_AS(strange5_ratio(0.0), DomainError);

  // S = 18 sqrt(2), V = 4 sqrt(3) at rho = sqrt(2).
  const Polytope3 b = regular_triangle_bipyramid(s2);
  CHECK(rel(surface_area(b), 18 * s2) < 1e-12);
  CHECK(rel(volume(b), 4 * std::sqrt(3.0)) < 1e-12);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lr(std::log(0.01), std::log(100.0));
  for (int k = 0; k < 500; ++k) {
    const double rho = std::exp(lr(rng));
    REQUIRE(rel(strange5_ratio(rho), isoperimetric_ratio(regular_triangle_bipyramid(rho))) < 1e-9);
    REQUIRE(strange5_ratio(rho) >= 243.0 * (1 - 1e-15));
  }
  // The minimizer is 1/sqrt(2); sqrt(2) is not even a critical point.
  CHECK(strange5_ratio(1 / s2 * 1.001) > 243.0);
  CHECK(strange5_ratio(1 / s2 * 0.999) > 243.0);
  CHECK(strange5_ratio(s2 * 0.999) < strange5_ratio(s2));
}

TEST_CASE("closed forms agree with the hull") {
  std::mt19937_64 rng(4);
  const FeasibilityProfile six = FeasibilityProfile::six_vertex();
  for (int k = 0; k < 2000; ++k) {
    const StrangeParams p = random_feasible(rng, six);
    const StrangeBody body = realize(p);
    REQUIRE(rel(strange_V(p), volume(body.polytope)) < 1e-9);
    REQUIRE(rel(strange_S(p), surface_area(body.polytope)) < 1e-9);
    REQUIRE(rel(base_area(p), shoelace(base_polygon(p))) < 1e-12);

    // o, w1, ..., w5 in convex position, clockwise in this order.
    const auto q = base_polygon(p);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Vec2 a = q[i], b = q[(i + 1) % 6], c = q[(i + 2) % 6];
      REQUIRE(cross(b - a, c - b) <= 1e-12 * 6.5 * 6.5);
    }
  }
}
