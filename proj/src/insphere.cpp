#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "polyiso/error.hpp"
#include "polyiso/geometry.hpp"

namespace polyiso {

namespace {

// maximize c.z subject to A z <= b, z >= 0, with b >= 0 (origin feasible).
// Dense tableau, Bland's rule.
std::vector<double> simplex_max(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                                const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(a[i].begin(), a[i].end(), t[i].begin());
    t[i][n + i] = 1.0;
    t[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

  constexpr double kPivotTol = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (t[m][j] < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = INFINITY;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > kPivotTol) {
        double ratio = t[i][cols - 1] / t[i][enter];
        if (ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) throw DomainError("insphere: unbounded linear program");
    const double piv = t[leave][enter];
    for (double& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  std::vector<double> z(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) z[basis[i]] = t[i][cols - 1];
  }
  return z;
}

}  // namespace

Insphere insphere(const Polytope3& p) {
  // Shift to the vertex centroid so that the origin is strictly feasible.
  const Vec3 c = p.vertex_centroid();
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (const Facet& f : p.facets()) {
    const Vec3 n = f.normal;
    a.push_back({n.x, n.y, n.z, -n.x, -n.y, -n.z, 1.0});
    b.push_back(std::max(0.0, f.offset - dot(n, c)));
  }
  const std::vector<double> z = simplex_max(a, b, {0, 0, 0, 0, 0, 0, 1});

  Insphere out;
  out.center = c + Vec3{z[0] - z[3], z[1] - z[4], z[2] - z[5]};
  out.radius = std::numeric_limits<double>::infinity();
  for (const Facet& f : p.facets()) out.radius = std::min(out.radius, -f.signed_distance(out.center));
  const double tol = 1e-9 * p.diameter();
  for (std::size_t i = 0; i < p.facets().size(); ++i) {
    if (-p.facets()[i].signed_distance(out.center) <= out.radius + tol) out.touching.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace polyiso
