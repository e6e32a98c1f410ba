#pragma once

#include <string>
#include <vector>

#include "polyiso/geometry.hpp"

namespace polyiso {

/// Numerical thresholds of the shape bounds.
namespace constants {
// Isoperimetric constants of the extremal bodies.
inline const double kTetrahedronBound = 216.0 * std::sqrt(3.0);
inline const double kBipyramidBound = 243.0 * std::sqrt(2.0);
inline const double kOctahedronBound = 108.0 * std::sqrt(3.0);

// Volume estimate: six-vertex case (ratio > 188 outside [0.411, 5.1]).
constexpr double kVolumeEstSixRatio = 188.0;
constexpr double kVolumeEstSixAreaLow = 0.411;
constexpr double kVolumeEstSixAreaHigh = 5.1;
// Volume estimate: five-vertex case (ratio > 344 outside [0.09, 15]).
constexpr double kVolumeEstFiveRatio = 344.0;
constexpr double kVolumeEstFiveAreaLow = 0.09;
constexpr double kVolumeEstFiveAreaHigh = 15.0;
// Distance estimate: vertex norms bounded by 6.5 (six) / 17 (five vertices),
// under the volume caps 3.4 / 10.
constexpr double kDistanceEstSixRadius = 6.5;
constexpr double kDistanceEstSixVolumeCap = 3.4;
constexpr double kDistanceEstFiveRadius = 17.0;
constexpr double kDistanceEstFiveVolumeCap = 10.0;
// Alternative five-vertex constants as stated in the bipyramid proof text.
constexpr double kBipyramidTextAreaLow = 0.18;
constexpr double kBipyramidTextRadius = 11.0;
// Margin claimed for S^3 - 188 V^2 over the reduced six-vertex family.
constexpr double kSixVertexMargin = 3.44;
}  // namespace constants

/// Coordinates of the base vertices w1 = (x1, y1), w2 = (x2, y2),
/// w3 = (x3, 0), w4 = (x2, -y2), w5 = (x1, -y1) of a strange polytope with
/// apices (0, 0, +-1).
struct StrangeParams {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
};

/// Which vertex-count family a feasibility check refers to, with its
/// area lower bound and coordinate cap.
struct FeasibilityProfile {
  std::string name;
  double area_min = 0.0;
  double coord_max = 0.0;

  static FeasibilityProfile six_vertex();
  /// Area 0.09, coordinates up to 17.
  static FeasibilityProfile five_vertex();
  /// Area 0.18, coordinates up to 11.
  static FeasibilityProfile five_vertex_text();
  /// Looks up one of the above by name; throws DomainError otherwise.
  static FeasibilityProfile by_name(const std::string& name);
};

double base_area(const StrangeParams& p);
/// 2/3 |Q|.
double strange_V(const StrangeParams& p);
double strange_S(const StrangeParams& p);
/// S^3 - ratio * V^2.
double strange_G(const StrangeParams& p, double ratio = 188.0);

/// Ordering and sign constraints.
bool satisfies_ordering(const StrangeParams& p);
/// Boundary-order constraints.
bool satisfies_convexity(const StrangeParams& p);
/// All four constraint groups under the given profile.
bool feasible(const StrangeParams& p, const FeasibilityProfile& profile);

struct StrangeBody {
  StrangeParams params;
  Polytope3 polytope;
  /// Labels ("o", "w1", ...) of input points that are not vertices of the hull.
  std::vector<std::string> absorbed;
};

/// The seven input points, in order: apex (0,0,1), apex (0,0,-1), o, w1..w5.
std::vector<Vec3> strange_points(const StrangeParams& p);

/// Hull of the apices, the origin and w1..w5. Throws DomainError when the
/// ordering or boundary-order constraints fail, DegenerateInput when the volume vanishes.
StrangeBody realize(const StrangeParams& p);

/// Ratio of the five-vertex double pyramid over a regular triangle of
/// inradius rho centred at the origin, apices (0,0,+-1).
double strange5_ratio(double rho);
/// That double pyramid as a polytope.
Polytope3 regular_triangle_bipyramid(double rho);

}  // namespace polyiso
