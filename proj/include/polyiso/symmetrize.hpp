#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "polyiso/geometry.hpp"

namespace polyiso {

/// A cell of an envelope: a projected facet and the affine height function
/// t(q) = c0 + cx q.x + cy q.y above (or below) it.
struct AffinePiece {
  Polygon2 cell;
  double c0 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int facet = -1;

  double operator()(Vec2 q) const { return c0 + cx * q.x + cy * q.y; }
};

/// Concave piecewise-affine function over the projection of a polytope.
/// The value at q is the minimum of the affine pieces, which coincides with
/// the piece whose cell contains q.
struct PiecewiseLinearEnvelope {
  Polygon2 domain;
  std::vector<AffinePiece> pieces;

  double operator()(Vec2 q) const;
};

struct Envelopes {
  ProjectionFrame frame;
  /// f(q) = max{t : q + t u in P}
  PiecewiseLinearEnvelope upper;
  /// g(q) = -min{t : q + t u in P}
  PiecewiseLinearEnvelope lower;
};

/// Facets whose normal is orthogonal to `normal` (within tolerance) project
/// to zero-area cells and are left out.
Envelopes envelopes(const Polytope3& p, Vec3 normal);

/// Points of the overlay of the upper and lower cell subdivisions: the
/// projected vertices plus all crossings of upper-cell edges with lower-cell
/// edges. (f + g) / 2 is affine between them.
std::vector<Vec2> overlay_vertices(const Polytope3& p, const Envelopes& env);

/// Steiner symmetral with respect to the plane through the origin with the
/// given normal.
Polytope3 steiner_symmetral(const Polytope3& p, Vec3 normal);

struct ApexPair {
  int i = -1;
  int j = -1;
};

/// Both vertices are adjacent to every other vertex and every triangle
/// contains one of them. The two need not be adjacent to each other.
bool is_apex_pair(const TriangulatedBoundary& t, ApexPair pair);
/// Lexicographically first apex pair, if any.
std::optional<ApexPair> find_apex_pair(const TriangulatedBoundary& t);

struct BipyramidSymmetral {
  Polytope3 polytope;
  /// Input triangles carried over through `image`.
  TriangulatedBoundary triangulation;
  /// image[k] = output vertex corresponding to input vertex k.
  std::vector<int> image;
};

/// Symmetral with respect to (v_j - v_i)^perp. The result is a double pyramid
/// with the same vertex count; throws InvalidApexPair if `pair` does not
/// qualify.
BipyramidSymmetral bipyramid_symmetral(const TriangulatedBoundary& t, ApexPair pair);

struct OctahedralReduction {
  std::array<double, 3> half_diagonals{};
  Polytope3 result;
};

/// Three successive type-preserving symmetrizations turning an octahedral
/// triangulated polytope into conv{+-t_i u_i}. Throws NotOctahedralType.
OctahedralReduction octahedral_pipeline(const Polytope3& p);

/// Ratio S^3/V^2 of conv{+-t_i u_i}: 27 V (sum 1/t_i^2)^{3/2}, V = 4/3 t1 t2 t3.
double jensen_bound(double t1, double t2, double t3);

/// 18 sqrt((pi + q)^3 / q): ratio of the Schwarz rounding of a strange
/// polytope with base area q. Throws DomainError for q <= 0.
double schwarz_lower_bound(double q);

}  // namespace polyiso
