#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include <gmpxx.h>

#include "polyiso/error.hpp"
#include "polyiso/geometry.hpp"

namespace polyiso {

namespace {

struct Face {
  std::array<int, 3> v;
  Vec3 n;
  double d = 0.0;
};

Face make_face(std::span<const Vec3> pts, int a, int b, int c) {
  Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
  double len = norm(n);
  if (len > 0.0) n = n / len;
  return {{a, b, c}, n, dot(n, pts[a])};
}

// Exact sign of (b - a) x (c - a) . (p - a): a floating-point filter with
// Shewchuk's error bound, then rational arithmetic when it is inconclusive.
int orient(Vec3 a, Vec3 b, Vec3 c, Vec3 p) {
  const Vec3 u = b - a, v = c - a, w = p - a;
  const double det = u.x * (v.y * w.z - v.z * w.y) + u.y * (v.z * w.x - v.x * w.z) + u.z * (v.x * w.y - v.y * w.x);
  const double perm = std::abs(u.x) * (std::abs(v.y * w.z) + std::abs(v.z * w.y)) +
                      std::abs(u.y) * (std::abs(v.z * w.x) + std::abs(v.x * w.z)) +
                      std::abs(u.z) * (std::abs(v.x * w.y) + std::abs(v.y * w.x));
  const double bound = 7.771561172376103e-16 * perm;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  auto q = [](double x) { return mpq_class(x); };
  const mpq_class ux = q(b.x) - q(a.x), uy = q(b.y) - q(a.y), uz = q(b.z) - q(a.z);
  const mpq_class vx = q(c.x) - q(a.x), vy = q(c.y) - q(a.y), vz = q(c.z) - q(a.z);
  const mpq_class wx = q(p.x) - q(a.x), wy = q(p.y) - q(a.y), wz = q(p.z) - q(a.z);
  const mpq_class exact = ux * (vy * wz - vz * wy) + uy * (vz * wx - vx * wz) + uz * (vx * wy - vy * wx);
  return sgn(exact);
}

double dist_to_line(Vec3 p, Vec3 a, Vec3 b) {
  Vec3 dir = b - a;
  return norm(cross(p - a, dir)) / norm(dir);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Triangulated hull of pts (indices into pts). Faces are oriented outward.
// Visibility is decided exactly, so every horizon is a simple cycle.
std::vector<Face> incremental_hull(std::span<const Vec3> pts, double eps) {
  const int n = static_cast<int>(pts.size());

  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (std::tie(pts[i].x, pts[i].y, pts[i].z) < std::tie(pts[i0].x, pts[i0].y, pts[i0].z)) i0 = i;
  }
  int i1 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = norm(pts[i] - pts[i0]);
    if (d > best) best = d, i1 = i;
  }
  if (i1 < 0 || best <= eps) throw DegenerateInput("convex_hull: all points coincide");
  int i2 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = dist_to_line(pts[i], pts[i0], pts[i1]);
    if (d > best) best = d, i2 = i;
  }
  if (i2 < 0 || best <= eps) throw DegenerateInput("convex_hull: points are collinear");
  Face base = make_face(pts, i0, i1, i2);
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = std::abs(dot(base.n, pts[i]) - base.d);
    if (d > best) best = d, i3 = i;
  }
  if (i3 < 0 || best <= eps) throw DegenerateInput("convex_hull: points are coplanar");

  std::vector<Face> faces;
  if (orient(pts[i0], pts[i1], pts[i2], pts[i3]) > 0) std::swap(i1, i2);
  faces.push_back(make_face(pts, i0, i1, i2));
  faces.push_back(make_face(pts, i0, i3, i1));
  faces.push_back(make_face(pts, i1, i3, i2));
  faces.push_back(make_face(pts, i2, i3, i0));

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<bool> visible(faces.size());
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto& v = faces[f].v;
      visible[f] = orient(pts[v[0]], pts[v[1]], pts[v[2]], pts[p]) > 0;
      any = any || visible[f];
    }
    if (!any) continue;

    std::set<std::pair<int, int>> visible_edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      for (int k = 0; k < 3; ++k) visible_edges.emplace(faces[f].v[k], faces[f].v[(k + 1) % 3]);
    }
    std::vector<Face> next;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) next.push_back(faces[f]);
    }
    for (auto [a, b] : visible_edges) {
      if (!visible_edges.contains({b, a})) next.push_back(make_face(pts, a, b, p));
    }
    faces = std::move(next);
  }
  return faces;
}

}  // namespace

double Polygon2::area() const {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    s += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
  }
  return 0.5 * s;
}

bool Polygon2::contains(Vec2 p, double tol) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vec2 a = vertices[i];
    Vec2 b = vertices[(i + 1) % vertices.size()];
    if (cross(b - a, p - a) < -tol * norm(b - a)) return false;
  }
  return true;
}

double Polygon2::boundary_distance(Vec2 p) const {
  double best = INFINITY;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vec2 a = vertices[i];
    Vec2 ab = vertices[(i + 1) % vertices.size()] - a;
    double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    best = std::min(best, norm(p - (a + t * ab)));
  }
  return best;
}

std::vector<int> convex_hull_2d(std::span<const Vec2> points, double tol) {
  std::vector<int> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::tie(points[a].x, points[a].y) < std::tie(points[b].x, points[b].y);
  });
  if (idx.size() < 3) return idx;

  // Monotone chain; a point is kept only if it turns left by more than tol.
  auto turns_left = [&](int o, int a, int b) {
    Vec2 oa = points[a] - points[o];
    Vec2 ob = points[b] - points[o];
    return cross(oa, ob) > tol * norm(ob);
  };
  std::vector<int> hull(2 * idx.size());
  std::size_t k = 0;
  for (int i : idx) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], i)) --k;
    hull[k++] = i;
  }
  for (std::size_t j = idx.size() - 1, lower = k + 1; j-- > 0;) {
    int i = idx[j];
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], i)) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  // Drop points that coincide within tol (can survive the strict test when
  // duplicated).
  std::vector<int> out;
  for (int i : hull) {
    if (!out.empty() && norm(points[i] - points[out.back()]) <= tol) continue;
    out.push_back(i);
  }
  while (out.size() > 1 && norm(points[out.front()] - points[out.back()]) <= tol) out.pop_back();
  return out;
}

ProjectionFrame::ProjectionFrame(Vec3 normal) {
  double len = norm(normal);
  if (!(len > 0.0) || !std::isfinite(len)) throw DomainError("projection normal must be nonzero");
  u = normal / len;
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(u[i]) < std::abs(u[axis])) axis = i;
  }
  Vec3 a{axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0, axis == 2 ? 1.0 : 0.0};
  e1 = normalized(a - dot(a, u) * u);
  e2 = cross(u, e1);
}

Polytope3 convex_hull(std::span<const Vec3> input) {
  if (input.size() < 4) throw DegenerateInput("convex_hull: need at least 4 points");
  Vec3 lo = input[0];
  Vec3 hi = input[0];
  for (Vec3 p : input) {
    if (!is_finite(p)) throw DomainError("convex_hull: non-finite coordinate");
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const double diag = norm(hi - lo);
  const double eps = 1e-9 * diag;
  if (!(eps > 0.0)) throw DegenerateInput("convex_hull: all points coincide");

  // Deduplicate, remembering the first input index of each distinct point.
  std::vector<Vec3> pts;
  std::vector<int> origin;
  for (std::size_t i = 0; i < input.size(); ++i) {
    bool dup = std::any_of(pts.begin(), pts.end(), [&](Vec3 q) { return norm(q - input[i]) <= eps; });
    if (!dup) {
      pts.push_back(input[i]);
      origin.push_back(static_cast<int>(i));
    }
  }
  if (pts.size() < 4) throw DegenerateInput("convex_hull: fewer than 4 distinct points");

  std::vector<Face> faces = incremental_hull(pts, eps);

  // Closed-manifold check: every directed edge has its reverse.
  std::set<std::pair<int, int>> edges;
  for (const Face& f : faces) {
    for (int k = 0; k < 3; ++k) edges.emplace(f.v[k], f.v[(k + 1) % 3]);
  }
  for (auto [a, b] : edges) {
    if (!edges.contains({b, a})) throw DegenerateInput("convex_hull: numerically inconsistent input");
  }

  // Merge triangles lying on a common supporting plane: grow each group
  // across shared edges from its largest triangle, measuring against that
  // triangle's plane.
  std::map<std::pair<int, int>, int> owner;
  std::vector<double> area(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& v = faces[f].v;
    for (int k = 0; k < 3; ++k) owner[{v[k], v[(k + 1) % 3]}] = static_cast<int>(f);
    area[f] = norm(cross(pts[v[1]] - pts[v[0]], pts[v[2]] - pts[v[0]]));
  }
  std::vector<int> by_area(faces.size());
  std::iota(by_area.begin(), by_area.end(), 0);
  std::stable_sort(by_area.begin(), by_area.end(), [&](int a, int b) { return area[a] > area[b]; });
  UnionFind groups(faces.size());
  std::vector<bool> assigned(faces.size(), false);
  for (int seed : by_area) {
    if (assigned[seed]) continue;
    assigned[seed] = true;
    const Face& plane = faces[seed];
    std::vector<int> stack{seed};
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      for (int k = 0; k < 3; ++k) {
        const int g = owner.at({faces[f].v[(k + 1) % 3], faces[f].v[k]});
        if (assigned[g] || dot(plane.n, faces[g].n) <= 0.0) continue;
        const bool coplanar = std::all_of(faces[g].v.begin(), faces[g].v.end(), [&](int v) {
          return std::abs(dot(plane.n, pts[v]) - plane.d) <= eps;
        });
        if (!coplanar) continue;
        assigned[g] = true;
        groups.unite(g, seed);
        stack.push_back(g);
      }
    }
  }

  struct Group {
    Vec3 normal;
    std::set<int> members;
  };
  std::vector<Group> merged;
  std::vector<int> slot(faces.size(), -1);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    int root = groups.find(static_cast<int>(f));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(merged.size());
      merged.push_back({});
    }
    Group& g = merged[slot[root]];
    const Face& face = faces[f];
    g.normal += cross(pts[face.v[1]] - pts[face.v[0]], pts[face.v[2]] - pts[face.v[0]]);
    g.members.insert(face.v.begin(), face.v.end());
  }

  // Facet cycles as strict planar hulls; their union is the extreme set.
  std::vector<std::vector<int>> cycles;  // indices into pts
  std::set<int> extreme;
  for (const Group& g : merged) {
    ProjectionFrame frame(g.normal);
    std::vector<int> members(g.members.begin(), g.members.end());
    std::vector<Vec2> flat;
    for (int v : members) flat.push_back(frame.to_plane(pts[v]));
    std::vector<int> ring = convex_hull_2d(flat, eps);
    std::vector<int> cycle;
    for (int r : ring) cycle.push_back(members[r]);
    if (cycle.size() < 3) continue;
    extreme.insert(cycle.begin(), cycle.end());
    cycles.push_back(std::move(cycle));
  }

  Polytope3 out;
  out.eps_ = eps;
  std::vector<int> remap(pts.size(), -1);
  std::vector<int> order(extreme.begin(), extreme.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) { return origin[a] < origin[b]; });
  for (int v : order) {
    remap[v] = static_cast<int>(out.vertices_.size());
    out.vertices_.push_back(pts[v]);
    out.source_.push_back(origin[v]);
  }
  for (const auto& cycle : cycles) {
    Facet f;
    for (int v : cycle) f.cycle.push_back(remap[v]);
    std::rotate(f.cycle.begin(), std::min_element(f.cycle.begin(), f.cycle.end()), f.cycle.end());
    // Newell normal of the final cycle.
    Vec3 nrm;
    Vec3 mean;
    for (std::size_t i = 0; i < f.cycle.size(); ++i) {
      nrm += cross(out.vertices_[f.cycle[i]], out.vertices_[f.cycle[(i + 1) % f.cycle.size()]]);
      mean += out.vertices_[f.cycle[i]];
    }
    f.normal = normalized(nrm);
    f.offset = dot(f.normal, mean / static_cast<double>(f.cycle.size()));
    out.facets_.push_back(std::move(f));
  }
  std::sort(out.facets_.begin(), out.facets_.end(),
            [](const Facet& a, const Facet& b) { return a.cycle < b.cycle; });

  if (out.vertices_.size() < 4 || out.facets_.size() < 4) {
    throw DegenerateInput("convex_hull: degenerate hull");
  }
  for (const Facet& f : out.facets_) {
    for (Vec3 p : pts) {
      if (f.signed_distance(p) > 10.0 * eps) {
        throw DegenerateInput("convex_hull: numerically inconsistent input");
      }
    }
  }
  if (!(volume(out) > eps * diag * diag)) throw DegenerateInput("convex_hull: zero volume");
  return out;
}

}  // namespace polyiso
