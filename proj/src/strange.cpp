#include "polyiso/strange.hpp"

#include <cmath>

#include "polyiso/error.hpp"
#include "polyiso/strange_formulas.hpp"

namespace polyiso {

FeasibilityProfile FeasibilityProfile::six_vertex() {
  return {"six_vertex", constants::kVolumeEstSixAreaLow, constants::kDistanceEstSixRadius};
}

FeasibilityProfile FeasibilityProfile::five_vertex() {
  return {"five_vertex", constants::kVolumeEstFiveAreaLow, constants::kDistanceEstFiveRadius};
}

FeasibilityProfile FeasibilityProfile::five_vertex_text() {
  return {"five_vertex_text", constants::kBipyramidTextAreaLow, constants::kBipyramidTextRadius};
}

FeasibilityProfile FeasibilityProfile::by_name(const std::string& name) {
  for (auto make : {&six_vertex, &five_vertex, &five_vertex_text}) {
    FeasibilityProfile p = make();
    if (p.name == name) return p;
  }
  throw DomainError("unknown feasibility profile '" + name + "'");
}

double base_area(const StrangeParams& p) { return formulas::base_area(p.x1, p.x2, p.x3, p.y1, p.y2); }

double strange_V(const StrangeParams& p) { return 2.0 / 3.0 * base_area(p); }

double strange_S(const StrangeParams& p) { return formulas::surface(p.x1, p.x2, p.x3, p.y1, p.y2); }

double strange_G(const StrangeParams& p, double ratio) {
  const double s = strange_S(p);
  const double v = strange_V(p);
  return s * s * s - ratio * v * v;
}

bool satisfies_ordering(const StrangeParams& p) {
  return 0.0 <= p.x1 && p.x1 <= p.x2 && p.x2 <= p.x3 && p.y1 >= 0.0 && p.y2 >= 0.0;
}

bool satisfies_convexity(const StrangeParams& p) {
  return p.x2 * p.y1 - p.x1 * p.y2 >= 0.0 && (p.x3 - p.x1) * p.y2 - (p.x3 - p.x2) * p.y1 >= 0.0;
}

bool feasible(const StrangeParams& p, const FeasibilityProfile& profile) {
  return satisfies_ordering(p) && satisfies_convexity(p) && base_area(p) >= profile.area_min &&
         p.x3 <= profile.coord_max && p.y1 <= profile.coord_max && p.y2 <= profile.coord_max;
}

std::vector<Vec3> strange_points(const StrangeParams& p) {
  return {{0, 0, 1},           {0, 0, -1},         {0, 0, 0},          {p.x1, p.y1, 0},
          {p.x2, p.y2, 0},     {p.x3, 0, 0},       {p.x2, -p.y2, 0},   {p.x1, -p.y1, 0}};
}

StrangeBody realize(const StrangeParams& p) {
  if (!satisfies_ordering(p) || !satisfies_convexity(p)) {
    throw DomainError("realize: parameters violate the ordering/convexity conditions");
  }
  if (!(base_area(p) > 0.0)) throw DegenerateInput("realize: base has zero area");
  const std::vector<Vec3> pts = strange_points(p);
  StrangeBody body{p, convex_hull(pts), {}};
  static const char* kLabels[] = {"apex+", "apex-", "o", "w1", "w2", "w3", "w4", "w5"};
  std::vector<bool> used(pts.size(), false);
  for (int s : body.polytope.source_indices()) used[s] = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!used[i]) body.absorbed.emplace_back(kLabels[i]);
  }
  return body;
}

double strange5_ratio(double rho) {
  if (!(rho > 0.0)) throw DomainError("strange5_ratio: rho must be positive");
  const double q = 1.0 + rho * rho;
  return 54.0 * std::sqrt(3.0) * q * std::sqrt(q) / rho;
}

Polytope3 regular_triangle_bipyramid(double rho) {
  if (!(rho > 0.0)) throw DomainError("regular_triangle_bipyramid: rho must be positive");
  // Circumradius of an equilateral triangle is twice its inradius.
  const double r = 2.0 * rho;
  const double h = std::sqrt(3.0) / 2.0;
  const std::vector<Vec3> pts = {{r, 0, 0}, {-r / 2, r * h, 0}, {-r / 2, -r * h, 0}, {0, 0, 1}, {0, 0, -1}};
  return convex_hull(pts);
}

}  // namespace polyiso
