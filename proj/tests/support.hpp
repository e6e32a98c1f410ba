#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polyiso/geometry.hpp"

namespace testing {

using polyiso::Vec3;

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  return polyiso::normalized(v);
}

/// Uniform point in the ball of radius r.
inline Vec3 random_in_ball(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return r * std::cbrt(u(rng)) * random_unit(rng);
}

inline std::vector<Vec3> random_cloud(std::mt19937_64& rng, int n, double r) {
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_in_ball(rng, r));
  return pts;
}

/// Rotation by a random unit quaternion.
struct Rotation {
  double m[3][3];
  explicit Rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    double q[4] = {n(rng), n(rng), n(rng), n(rng)};
    const double s = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    for (double& c : q) c /= s;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    const double r[3][3] = {{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
                            {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
                            {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = r[i][j];
  }
  Vec3 operator()(Vec3 v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
};

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Largest distance by which a vertex of one body lies outside the other,
/// over both directions; zero-ish iff the two bodies coincide.
inline double hull_distance(const polyiso::Polytope3& a, const polyiso::Polytope3& b) {
  auto outside = [](const polyiso::Polytope3& x, const polyiso::Polytope3& y) {
    double worst = 0.0;
    for (const Vec3& v : x.vertices()) {
      for (const polyiso::Facet& f : y.facets()) worst = std::max(worst, f.signed_distance(v));
    }
    return worst;
  };
  return std::max(outside(a, b), outside(b, a));
}

inline polyiso::Polytope3 reflected(const polyiso::Polytope3& p, Vec3 u) {
  std::vector<Vec3> pts;
  for (const Vec3& v : p.vertices()) pts.push_back(v - 2 * polyiso::dot(v, u) * u);
  return polyiso::convex_hull(pts);
}

inline std::vector<Vec3> octahedron_points(double a = 1, double b = 1, double c = 1) {
  return {{a, 0, 0}, {-a, 0, 0}, {0, b, 0}, {0, -b, 0}, {0, 0, c}, {0, 0, -c}};
}

inline std::vector<Vec3> cube_points(double lo = 0, double hi = 1) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({i & 1 ? hi : lo, i & 2 ? hi : lo, i & 4 ? hi : lo});
  return pts;
}

inline std::vector<Vec3> tetrahedron_points() { return {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}; }

}  // namespace testing
