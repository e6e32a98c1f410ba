#include "polyiso/polytope_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polyiso/error.hpp"

namespace polyiso {

using nlohmann::json;

namespace {

std::vector<Vec3> parse_off(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) tokens.push_back(t);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw ParseError("OFF: unexpected end of file");
    return tokens[pos++];
  };
  if (next() != "OFF") throw ParseError("OFF: missing header");
  try {
    const long n = std::stol(next());
    next();  // faces
    next();  // edges
    if (n < 0) throw ParseError("OFF: negative vertex count");
    std::vector<Vec3> pts;
    for (long i = 0; i < n; ++i) {
      const double x = std::stod(next());
      const double y = std::stod(next());
      const double z = std::stod(next());
      pts.push_back({x, y, z});
    }
    return pts;
  } catch (const std::logic_error&) {
    throw ParseError("OFF: malformed number");
  }
}

}  // namespace

std::vector<Vec3> parse_points(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 3, "OFF") == 0) return parse_off(text);
  try {
    const json j = json::parse(text);
    std::vector<Vec3> pts;
    for (const json& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 3) throw ParseError("vertices must be [x, y, z] triples");
      pts.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
    return pts;
  } catch (const json::exception& e) {
    throw ParseError(std::string("polytope JSON: ") + e.what());
  }
}

std::vector<Vec3> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_points(ss.str());
}

Polytope3 load_polytope(const std::string& path) { return convex_hull(read_points(path)); }

std::string polytope_to_json(const Polytope3& p) {
  json verts = json::array();
  for (Vec3 v : p.vertices()) verts.push_back({v.x, v.y, v.z});
  json facets = json::array();
  for (const Facet& f : p.facets()) facets.push_back(f.cycle);
  return json{{"vertices", verts}, {"facets", facets}}.dump(1);
}

void save_polytope(const Polytope3& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << polytope_to_json(p) << '\n';
}

}  // namespace polyiso
