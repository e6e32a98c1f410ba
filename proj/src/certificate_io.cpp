#include "polyiso/certificate_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polyiso {

using nlohmann::json;

namespace {

json box_json(const Box5& b) {
  json out = json::array();
  for (const Interval& c : b.v) out.push_back({c.lo(), c.hi()});
  return out;
}

Box5 box_from(const json& j) {
  if (!j.is_array() || j.size() != Box5::kDim) throw ParseError("certificate: box must have five intervals");
  Box5 b;
  for (int i = 0; i < Box5::kDim; ++i) b.v[i] = Interval(j[i].at(0).get<double>(), j[i].at(1).get<double>());
  return b;
}

LeafStatus status_from(const std::string& s) {
  if (s == "verified") return LeafStatus::Verified;
  if (s == "infeasible") return LeafStatus::Infeasible;
  throw ParseError("certificate: unknown leaf status '" + s + "'");
}

BoundMethod method_from(const std::string& s) {
  for (BoundMethod m : {BoundMethod::None, BoundMethod::Natural, BoundMethod::MeanValue, BoundMethod::CubeRoot,
                        BoundMethod::Lagrangian}) {
    if (to_string(m) == s) return m;
  }
  throw ParseError("certificate: unknown bound method '" + s + "'");
}

ConstraintKind kind_from(const std::string& name) {
  static const std::pair<const char*, ConstraintKind> kinds[] = {
      {"x1<=x2", ConstraintKind::X1LeX2},
      {"x2<=x3", ConstraintKind::X2LeX3},
      {"x2*y1-x1*y2>=0", ConstraintKind::ConvexFirst},
      {"(x3-x1)*y2-(x3-x2)*y1>=0", ConstraintKind::ConvexSecond},
      {"area>=area_min", ConstraintKind::AreaMin},
      {"x3<=coord_max", ConstraintKind::X3Max},
      {"y1<=coord_max", ConstraintKind::Y1Max},
      {"y2<=coord_max", ConstraintKind::Y2Max},
  };
  for (const auto& [n, k] : kinds) {
    if (name == n) return k;
  }
  throw ParseError("certificate: unknown constraint '" + name + "'");
}

json leaf_json(const Leaf& leaf) {
  json j{{"box", box_json(leaf.box)},
         {"status", to_string(leaf.status)},
         {"bound_or_violation", leaf.bound},
         {"depth", leaf.depth}};
  if (leaf.constraint >= 0) j["constraint"] = leaf.constraint;
  if (leaf.status == LeafStatus::Verified) j["method"] = to_string(leaf.method);
  if (leaf.method == BoundMethod::Lagrangian) j["multiplier"] = leaf.multiplier;
  return j;
}

// JSON has no infinity; unset margins are written as null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double from_nullable(const json& j) { return j.is_null() ? INFINITY : j.get<double>(); }

}  // namespace

std::string to_string(LeafStatus s) { return s == LeafStatus::Verified ? "verified" : "infeasible"; }

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::None: return "none";
    case BoundMethod::Natural: return "natural";
    case BoundMethod::MeanValue: return "mean_value";
    case BoundMethod::CubeRoot: return "cube_root";
    case BoundMethod::Lagrangian: return "lagrangian";
  }
  return "none";
}

std::string leaf_json_line(const Leaf& leaf) { return leaf_json(leaf).dump(); }

void write_certificate(std::ostream& out, const Certificate& cert) {
  json constraints = json::array();
  for (const Constraint& c : cert.constraints.constraints) {
    constraints.push_back({{"name", c.name}, {"condition", c.condition}, {"bound", c.bound}});
  }
  const CertificateStats& s = cert.stats;
  const json stats{{"boxes", s.boxes},         {"leaves", s.leaves},       {"verified", s.verified},
                   {"infeasible", s.infeasible}, {"max_depth", s.max_depth}, {"seconds", s.seconds},
                   {"leaf_measure", s.leaf_measure}};
  // Leaves are written one per line so that large certificates never exist
  // as a single JSON tree in memory.
  out << "{\n";
  out << "\"claim\": " << json(cert.claim).dump() << ",\n";
  out << "\"threshold\": " << json(cert.threshold).dump() << ",\n";
  out << "\"ratio\": " << json(cert.ratio).dump() << ",\n";
  out << "\"rounding\": " << json(cert.rounding).dump() << ",\n";
  out << "\"profile\": " << json(cert.constraints.profile).dump() << ",\n";
  out << "\"root\": " << box_json(cert.root).dump() << ",\n";
  out << "\"constraints\": " << constraints.dump() << ",\n";
  out << "\"stats\": " << stats.dump() << ",\n";
  out << "\"global_margin\": " << finite_or_null(cert.global_margin).dump() << ",\n";
  out << "\"complete\": " << (cert.complete ? "true" : "false") << ",\n";
  if (!cert.complete) {
    out << "\"unresolved\": " << cert.unresolved << ",\n";
    out << "\"min_unresolved_bound\": " << finite_or_null(cert.min_unresolved_bound).dump() << ",\n";
  }
  out << "\"leaves\": [";
  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    out << (i ? ",\n" : "\n") << leaf_json(cert.leaves[i]).dump();
  }
  out << "\n]\n}\n";
}

std::string certificate_to_json(const Certificate& cert) {
  std::ostringstream out;
  write_certificate(out, cert);
  return out.str();
}

Certificate certificate_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Certificate c;
    c.claim = j.at("claim").get<std::string>();
    c.threshold = j.at("threshold").get<double>();
    c.ratio = j.value("ratio", 188.0);
    c.rounding = j.at("rounding").get<std::string>();
    c.constraints.profile = j.value("profile", std::string{});
    c.root = box_from(j.at("root"));
    for (const json& k : j.at("constraints")) {
      const std::string name = k.at("name").get<std::string>();
      c.constraints.constraints.push_back(
          {name, k.at("condition").get<int>(), kind_from(name), k.at("bound").get<double>()});
    }
    for (const json& l : j.at("leaves")) {
      Leaf leaf;
      leaf.box = box_from(l.at("box"));
      leaf.status = status_from(l.at("status").get<std::string>());
      leaf.bound = l.at("bound_or_violation").get<double>();
      leaf.depth = l.value("depth", 0);
      leaf.constraint = l.value("constraint", -1);
      leaf.method = method_from(l.value("method", std::string("none")));
      leaf.multiplier = l.value("multiplier", 0.0);
      c.leaves.push_back(leaf);
    }
    const json& s = j.at("stats");
    c.stats.boxes = s.value("boxes", std::uint64_t{0});
    c.stats.leaves = s.at("leaves").get<std::uint64_t>();
    c.stats.verified = s.value("verified", std::uint64_t{0});
    c.stats.infeasible = s.value("infeasible", std::uint64_t{0});
    c.stats.max_depth = s.at("max_depth").get<int>();
    c.stats.seconds = s.at("seconds").get<double>();
    c.stats.leaf_measure = s.value("leaf_measure", 0.0);
    c.global_margin = from_nullable(j.at("global_margin"));
    c.complete = j.value("complete", true);
    c.unresolved = j.value("unresolved", std::uint64_t{0});
    if (j.contains("min_unresolved_bound")) c.min_unresolved_bound = from_nullable(j["min_unresolved_bound"]);
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

void save_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_certificate(out, cert);
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return certificate_from_json(ss.str());
}

}  // namespace polyiso
