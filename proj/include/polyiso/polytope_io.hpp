#pragma once

#include <string>
#include <vector>

#include "polyiso/geometry.hpp"

namespace polyiso {

/// Points from `{"vertices": [[x, y, z], ...]}` or an OFF file (faces are
/// ignored). The format is chosen by content. Throws ParseError.
std::vector<Vec3> parse_points(const std::string& text);
std::vector<Vec3> read_points(const std::string& path);

/// Reads points and returns their convex hull.
Polytope3 load_polytope(const std::string& path);

/// `{"vertices": ..., "facets": [[i, j, k, ...], ...]}`.
std::string polytope_to_json(const Polytope3& p);
void save_polytope(const Polytope3& p, const std::string& path);

}  // namespace polyiso
