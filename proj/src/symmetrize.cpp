#include "polyiso/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyiso/error.hpp"

namespace polyiso {

namespace {

// Facets with |n . u| below this are parallel to the symmetrization direction.
constexpr double kVerticalTol = 1e-9;

Polygon2 projected_cell(const Polytope3& p, const Facet& f, const ProjectionFrame& frame) {
  std::vector<Vec2> flat;
  for (int v : f.cycle) flat.push_back(frame.to_plane(p.vertices()[v]));
  Polygon2 cell;
  for (int i : convex_hull_2d(flat, p.tolerance())) cell.vertices.push_back(flat[i]);
  return cell;
}

std::optional<Vec2> segment_crossing(Vec2 p, Vec2 p2, Vec2 q, Vec2 q2) {
  const Vec2 r = p2 - p;
  const Vec2 w = q2 - q;
  const double denom = cross(r, w);
  if (std::abs(denom) <= 1e-12 * norm(r) * norm(w)) return std::nullopt;
  const double s = cross(q - p, w) / denom;
  const double t = cross(q - p, r) / denom;
  constexpr double kSlack = 1e-12;
  if (s < -kSlack || s > 1 + kSlack || t < -kSlack || t > 1 + kSlack) return std::nullopt;
  return p + std::clamp(s, 0.0, 1.0) * r;
}

}  // namespace

double PiecewiseLinearEnvelope::operator()(Vec2 q) const {
  double best = INFINITY;
  for (const AffinePiece& piece : pieces) best = std::min(best, piece(q));
  return best;
}

Envelopes envelopes(const Polytope3& p, Vec3 normal) {
  Envelopes env{ProjectionFrame(normal), {}, {}};
  const ProjectionFrame& fr = env.frame;
  env.upper.domain = project(p, normal);
  env.lower.domain = env.upper.domain;
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    const Facet& f = p.facets()[k];
    const double nu = dot(f.normal, fr.u);
    if (std::abs(nu) <= kVerticalTol) continue;
    // Facet plane n.(q1 e1 + q2 e2 + t u) = d solved for t.
    AffinePiece piece{projected_cell(p, f, fr), f.offset / nu, -dot(f.normal, fr.e1) / nu,
                      -dot(f.normal, fr.e2) / nu, static_cast<int>(k)};
    if (nu > 0.0) {
      env.upper.pieces.push_back(std::move(piece));
    } else {
      piece.c0 = -piece.c0;
      piece.cx = -piece.cx;
      piece.cy = -piece.cy;
      env.lower.pieces.push_back(std::move(piece));
    }
  }
  return env;
}

std::vector<Vec2> overlay_vertices(const Polytope3& p, const Envelopes& env) {
  const double snap = 1e-9 * p.diameter();
  std::vector<Vec2> out;
  auto add = [&](Vec2 q) {
    bool dup = std::any_of(out.begin(), out.end(), [&](Vec2 o) { return norm(o - q) <= snap; });
    if (!dup) out.push_back(q);
  };
  for (Vec3 v : p.vertices()) add(env.frame.to_plane(v));
  for (const AffinePiece& up : env.upper.pieces) {
    const auto& a = up.cell.vertices;
    for (const AffinePiece& lo : env.lower.pieces) {
      const auto& b = lo.cell.vertices;
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          auto x = segment_crossing(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()]);
          if (x) add(*x);
        }
      }
    }
  }
  return out;
}

namespace {

// Lowest and highest boundary point of p over q, interpolated inside the
// boundary triangles whose projections contain q (barycentric slack `slack`).
std::optional<std::pair<double, double>> chord(const TriangulatedBoundary& t, const std::vector<Vec2>& flat,
                                               const std::vector<double>& height, Vec2 q, double slack) {
  double lo = INFINITY, hi = -INFINITY;
  for (const Triangle& tri : t.triangles) {
    const Vec2 a = flat[tri[0]], b = flat[tri[1]], c = flat[tri[2]];
    const double area = cross(b - a, c - a);
    const double scale = std::max({norm(b - a), norm(c - b), norm(a - c)});
    if (!(std::abs(area) > 1e-14 * scale * scale)) continue;
    double l0 = cross(b - q, c - q) / area;
    double l1 = cross(c - q, a - q) / area;
    double l2 = cross(a - q, b - q) / area;
    if (std::min({l0, l1, l2}) < -slack) continue;
    l0 = std::max(l0, 0.0);
    l1 = std::max(l1, 0.0);
    l2 = std::max(l2, 0.0);
    const double h = (l0 * height[tri[0]] + l1 * height[tri[1]] + l2 * height[tri[2]]) / (l0 + l1 + l2);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  if (!(lo <= hi)) return std::nullopt;
  return std::pair{lo, hi};
}

}  // namespace

Polytope3 steiner_symmetral(const Polytope3& p, Vec3 normal) {
  const Envelopes env = envelopes(p, normal);
  const TriangulatedBoundary t = triangulate_boundary(p);
  std::vector<Vec2> flat;
  std::vector<double> height;
  for (const Vec3& v : p.vertices()) {
    flat.push_back(env.frame.to_plane(v));
    height.push_back(dot(v, env.frame.u));
  }
  std::vector<Vec3> pts;
  for (Vec2 q : overlay_vertices(p, env)) {
    auto c = chord(t, flat, height, q, 1e-12);
    if (!c) c = chord(t, flat, height, q, 1e-9);
    const double half = c ? 0.5 * (c->second - c->first) : std::max(0.0, 0.5 * (env.upper(q) + env.lower(q)));
    pts.push_back(env.frame.lift(q, half));
    pts.push_back(env.frame.lift(q, -half));
  }
  return convex_hull(pts);
}

bool is_apex_pair(const TriangulatedBoundary& t, ApexPair pair) {
  const int n = static_cast<int>(t.base.vertices().size());
  if (pair.i == pair.j || pair.i < 0 || pair.j < 0 || pair.i >= n || pair.j >= n) return false;
  const auto adj = adjacency(t);
  for (int k = 0; k < n; ++k) {
    if (k == pair.i || k == pair.j) continue;
    if (!adj[pair.i][k] || !adj[pair.j][k]) return false;
  }
  return std::all_of(t.triangles.begin(), t.triangles.end(), [&](const Triangle& tri) {
    return std::find(tri.begin(), tri.end(), pair.i) != tri.end() ||
           std::find(tri.begin(), tri.end(), pair.j) != tri.end();
  });
}

std::optional<ApexPair> find_apex_pair(const TriangulatedBoundary& t) {
  const int n = static_cast<int>(t.base.vertices().size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (is_apex_pair(t, {i, j})) return ApexPair{i, j};
    }
  }
  return std::nullopt;
}

BipyramidSymmetral bipyramid_symmetral(const TriangulatedBoundary& t, ApexPair pair) {
  if (!is_apex_pair(t, pair)) throw InvalidApexPair("bipyramid_symmetral: vertices do not form an apex pair");
  const auto& v = t.base.vertices();
  const Vec3 axis = v[pair.j] - v[pair.i];
  Polytope3 sym = steiner_symmetral(t.base, axis);

  // Expected positions: apices on the symmetry axis, all other vertices
  // projected into the plane.
  const ProjectionFrame frame(axis);
  const Vec2 foot = frame.to_plane(v[pair.i]);
  const double half = 0.5 * norm(axis);
  const double tol = 1e-7 * t.base.diameter();
  std::vector<int> image(v.size(), -1);
  for (std::size_t k = 0; k < v.size(); ++k) {
    Vec3 target;
    if (static_cast<int>(k) == pair.i) {
      target = frame.lift(foot, -half);
    } else if (static_cast<int>(k) == pair.j) {
      target = frame.lift(foot, half);
    } else {
      target = frame.lift(frame.to_plane(v[k]), 0.0);
    }
    for (std::size_t m = 0; m < sym.vertices().size(); ++m) {
      if (norm(sym.vertices()[m] - target) <= tol) image[k] = static_cast<int>(m);
    }
    if (image[k] < 0) throw DegenerateInput("bipyramid_symmetral: vertex not preserved by symmetrization");
  }
  if (sym.vertices().size() != v.size()) {
    throw DegenerateInput("bipyramid_symmetral: vertex count changed");
  }

  TriangulatedBoundary induced{sym, {}};
  for (const Triangle& tri : t.triangles) induced.triangles.push_back({image[tri[0]], image[tri[1]], image[tri[2]]});
  if (!is_valid_triangulation(induced)) {
    throw DegenerateInput("bipyramid_symmetral: induced triangulation does not tile the boundary");
  }
  return {std::move(sym), std::move(induced), std::move(image)};
}

OctahedralReduction octahedral_pipeline(const Polytope3& p) {
  const TriangulatedBoundary tri = triangulate_boundary(p);
  const auto deg = vertex_degrees(tri);
  if (deg.size() != 6 || std::any_of(deg.begin(), deg.end(), [](int d) { return d != 4; })) {
    throw NotOctahedralType("octahedral_pipeline: triangulation is not of octahedral type");
  }
  const auto adj = adjacency(tri);
  auto opposite = [&](int a) {
    for (int b = 0; b < 6; ++b) {
      if (b != a && !adj[a][b]) return b;
    }
    throw NotOctahedralType("octahedral_pipeline: vertex adjacent to all others");
  };
  // Antipodal pairs (v_k, v_{k+3}) in the labelling of the original vertices.
  std::array<std::pair<int, int>, 3> poles;
  std::vector<bool> taken(6, false);
  for (auto& pole : poles) {
    int a = static_cast<int>(std::find(taken.begin(), taken.end(), false) - taken.begin());
    int b = opposite(a);
    if (taken[b]) throw NotOctahedralType("octahedral_pipeline: antipodes are not paired");
    taken[a] = taken[b] = true;
    pole = {a, b};
  }

  std::vector<int> label = {0, 1, 2, 3, 4, 5};  // original vertex -> current vertex
  TriangulatedBoundary current = tri;
  for (const auto& [a, b] : poles) {
    BipyramidSymmetral step = bipyramid_symmetral(current, {label[a], label[b]});
    for (int& l : label) l = step.image[l];
    current = std::move(step.triangulation);
  }

  OctahedralReduction out{{}, current.base};
  const auto& v = current.base.vertices();
  for (int k = 0; k < 3; ++k) {
    out.half_diagonals[k] = 0.5 * norm(v[label[poles[k].second]] - v[label[poles[k].first]]);
  }
  return out;
}

double jensen_bound(double t1, double t2, double t3) {
  if (!(t1 > 0.0 && t2 > 0.0 && t3 > 0.0)) throw DomainError("jensen_bound: half-diagonals must be positive");
  const double v = 4.0 / 3.0 * t1 * t2 * t3;
  const double s = 1.0 / (t1 * t1) + 1.0 / (t2 * t2) + 1.0 / (t3 * t3);
  return 27.0 * v * s * std::sqrt(s);
}

double schwarz_lower_bound(double q) {
  if (!(q > 0.0)) throw DomainError("schwarz_lower_bound: area must be positive");
  const double a = std::numbers::pi + q;
  return 18.0 * std::sqrt(a * a * a / q);
}

}  // namespace polyiso
