#pragma once

#include <array>
#include <span>
#include <vector>

#include "polyiso/vec.hpp"

namespace polyiso {

/// Convex polygon, counter-clockwise, no repeated or collinear vertices.
struct Polygon2 {
  std::vector<Vec2> vertices;

  double area() const;
  bool contains(Vec2 p, double tol) const;
  /// Distance from p to the polygon boundary (p may be inside or outside).
  double boundary_distance(Vec2 p) const;
};

/// Strict convex hull of planar points; returns indices into `points` in
/// counter-clockwise order. Points within `tol` of a hull edge are dropped.
std::vector<int> convex_hull_2d(std::span<const Vec2> points, double tol);

struct Facet {
  /// Vertex indices, counter-clockwise seen from outside, starting at the
  /// lowest index.
  std::vector<int> cycle;
  Vec3 normal;  // outward unit normal
  double offset = 0.0;  // normal . x == offset on the facet plane

  double signed_distance(Vec3 p) const { return dot(normal, p) - offset; }
};

/// Convex 3-polytope. Only constructible through convex_hull(), so every
/// instance satisfies: all vertices extreme, outward normals, planar convex
/// facet cycles, positive volume.
class Polytope3 {
 public:
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// For vertex k, the index of the input point it came from.
  const std::vector<int>& source_indices() const { return source_; }
  /// Distance tolerance the hull was built with.
  double tolerance() const { return eps_; }
  double diameter() const;
  Vec3 vertex_centroid() const;

 private:
  friend Polytope3 convex_hull(std::span<const Vec3> points);
  Polytope3() = default;

  std::vector<Vec3> vertices_;
  std::vector<Facet> facets_;
  std::vector<int> source_;
  double eps_ = 0.0;
};

/// Incremental 3D hull. Throws DegenerateInput for fewer than four points or
/// affinely dependent input (relative tolerance 1e-9 of the bounding-box
/// diagonal).
Polytope3 convex_hull(std::span<const Vec3> points);

double volume(const Polytope3& p);
double facet_area(const Polytope3& p, const Facet& f);
double surface_area(const Polytope3& p);
/// S^3 / V^2. Throws DegenerateInput when the volume is not positive.
double isoperimetric_ratio(const Polytope3& p);

using Triangle = std::array<int, 3>;

struct TriangulatedBoundary {
  Polytope3 base;
  std::vector<Triangle> triangles;
};

/// Fan-triangulates every facet from its lowest-index vertex.
TriangulatedBoundary triangulate_boundary(const Polytope3& p);
std::vector<int> vertex_degrees(const TriangulatedBoundary& t);
/// Symmetric adjacency matrix of the triangulation's edge graph.
std::vector<std::vector<bool>> adjacency(const TriangulatedBoundary& t);
/// True when every edge is shared by exactly two triangles, every triangle
/// lies on a facet plane, and the triangle areas sum to the surface area.
bool is_valid_triangulation(const TriangulatedBoundary& t);
/// Edge-graph isomorphism (degree filter + backtracking).
bool isomorphic(const TriangulatedBoundary& a, const TriangulatedBoundary& b);

struct Insphere {
  Vec3 center;
  double radius = 0.0;
  std::vector<int> touching;  // facet indices at distance radius
};

/// Chebyshev center: maximizes r subject to every facet plane being at
/// distance >= r from the center. Solved with a small dense simplex.
Insphere insphere(const Polytope3& p);

/// Orthonormal frame of the plane normal^perp. `e1` comes from Gram-Schmidt
/// on the coordinate axis least parallel to the normal (ties: lower axis
/// index); `e2 = u x e1` so that (e1, e2, u) is right-handed.
struct ProjectionFrame {
  Vec3 u;
  Vec3 e1;
  Vec3 e2;

  explicit ProjectionFrame(Vec3 normal);
  Vec2 to_plane(Vec3 p) const { return {dot(p, e1), dot(p, e2)}; }
  Vec3 lift(Vec2 q, double t) const { return q.x * e1 + q.y * e2 + t * u; }
};

/// Orthogonal projection onto normal^perp, expressed in ProjectionFrame.
Polygon2 project(const Polytope3& p, Vec3 normal);

/// Translation-equivalence of vertex sets after centering on the vertex
/// centroid.
bool is_translate(const Polytope3& a, const Polytope3& b, double tol);

}  // namespace polyiso
