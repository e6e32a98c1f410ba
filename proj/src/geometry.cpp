#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "polyiso/error.hpp"
#include "polyiso/geometry.hpp"

namespace polyiso {

double Polytope3::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      d = std::max(d, norm(vertices_[i] - vertices_[j]));
    }
  }
  return d;
}

Vec3 Polytope3::vertex_centroid() const {
  Vec3 c;
  for (Vec3 v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

double volume(const Polytope3& p) {
  const Vec3 c = p.vertex_centroid();
  const auto& v = p.vertices();
  double six_v = 0.0;
  for (const Facet& f : p.facets()) {
    Vec3 a = v[f.cycle[0]] - c;
    for (std::size_t i = 1; i + 1 < f.cycle.size(); ++i) {
      six_v += dot(a, cross(v[f.cycle[i]] - c, v[f.cycle[i + 1]] - c));
    }
  }
  return six_v / 6.0;
}

double facet_area(const Polytope3& p, const Facet& f) {
  const auto& v = p.vertices();
  Vec3 a = v[f.cycle[0]];
  Vec3 twice;
  for (std::size_t i = 1; i + 1 < f.cycle.size(); ++i) {
    twice += cross(v[f.cycle[i]] - a, v[f.cycle[i + 1]] - a);
  }
  return 0.5 * norm(twice);
}

double surface_area(const Polytope3& p) {
  double s = 0.0;
  for (const Facet& f : p.facets()) s += facet_area(p, f);
  return s;
}

double isoperimetric_ratio(const Polytope3& p) {
  const double v = volume(p);
  const double d = p.diameter();
  if (!(v > 1e-12 * d * d * d)) throw DegenerateInput("isoperimetric_ratio: zero volume");
  const double s = surface_area(p);
  return s * s * s / (v * v);
}

TriangulatedBoundary triangulate_boundary(const Polytope3& p) {
  TriangulatedBoundary t{p, {}};
  for (const Facet& f : p.facets()) {
    // cycle[0] is already the lowest index.
    for (std::size_t i = 1; i + 1 < f.cycle.size(); ++i) {
      t.triangles.push_back({f.cycle[0], f.cycle[i], f.cycle[i + 1]});
    }
  }
  return t;
}

std::vector<std::vector<bool>> adjacency(const TriangulatedBoundary& t) {
  const std::size_t n = t.base.vertices().size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const Triangle& tri : t.triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = tri[k];
      int b = tri[(k + 1) % 3];
      adj[a][b] = adj[b][a] = true;
    }
  }
  return adj;
}

std::vector<int> vertex_degrees(const TriangulatedBoundary& t) {
  std::vector<int> deg;
  for (const auto& row : adjacency(t)) deg.push_back(static_cast<int>(std::count(row.begin(), row.end(), true)));
  return deg;
}

bool is_valid_triangulation(const TriangulatedBoundary& t) {
  const auto& v = t.base.vertices();
  const int n = static_cast<int>(v.size());
  const double tol = 1e-7 * t.base.diameter();
  std::map<std::pair<int, int>, int> directed;
  double area = 0.0;
  for (const Triangle& tri : t.triangles) {
    for (int k : tri) {
      if (k < 0 || k >= n) return false;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) return false;
    bool on_facet = std::any_of(t.base.facets().begin(), t.base.facets().end(), [&](const Facet& f) {
      return std::all_of(tri.begin(), tri.end(), [&](int k) { return std::abs(f.signed_distance(v[k])) <= tol; });
    });
    if (!on_facet) return false;
    for (int k = 0; k < 3; ++k) {
      auto e = std::minmax(tri[k], tri[(k + 1) % 3]);
      ++directed[{e.first, e.second}];
    }
    area += 0.5 * norm(cross(v[tri[1]] - v[tri[0]], v[tri[2]] - v[tri[0]]));
  }
  for (const auto& [edge, count] : directed) {
    if (count != 2) return false;
  }
  double s = surface_area(t.base);
  return std::abs(area - s) <= 1e-9 * s;
}

bool isomorphic(const TriangulatedBoundary& a, const TriangulatedBoundary& b) {
  auto ga = adjacency(a);
  auto gb = adjacency(b);
  const int n = static_cast<int>(ga.size());
  if (static_cast<int>(gb.size()) != n) return false;
  auto da = vertex_degrees(a);
  auto db = vertex_degrees(b);
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int i) {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || da[i] != db[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) ok = ga[i][k] == gb[j][map[k]];
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      if (extend(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return extend(0);
}

Polygon2 project(const Polytope3& p, Vec3 normal) {
  ProjectionFrame frame(normal);
  std::vector<Vec2> flat;
  for (Vec3 v : p.vertices()) flat.push_back(frame.to_plane(v));
  Polygon2 out;
  for (int i : convex_hull_2d(flat, p.tolerance())) out.vertices.push_back(flat[i]);
  return out;
}

bool is_translate(const Polytope3& a, const Polytope3& b, double tol) {
  if (a.vertices().size() != b.vertices().size()) return false;
  const Vec3 ca = a.vertex_centroid();
  const Vec3 cb = b.vertex_centroid();
  for (Vec3 va : a.vertices()) {
    bool found = std::any_of(b.vertices().begin(), b.vertices().end(),
                             [&](Vec3 vb) { return norm((va - ca) - (vb - cb)) <= tol; });
    if (!found) return false;
  }
  return true;
}

}  // namespace polyiso
