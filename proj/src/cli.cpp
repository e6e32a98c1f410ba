#include "polyiso/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyiso/certificate_io.hpp"
#include "polyiso/certify.hpp"
#include "polyiso/error.hpp"
#include "polyiso/polytope_io.hpp"
#include "polyiso/strange.hpp"
#include "polyiso/symmetrize.hpp"

namespace polyiso::cli {

namespace {

std::string num(double x) { return format_number(x); }

class Csv {
 public:
  Csv(const std::string& path, const std::string& header) {
    if (path.empty()) return;
    out_.open(path);
    if (!out_) throw Error("cannot write " + path);
    out_ << header << '\n';
  }
  template <class... Ts>
  void row(const Ts&... fields) {
    if (!out_.is_open()) return;
    std::size_t i = 0;
    ((out_ << (i++ ? "," : "") << fields), ...);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

FeasibilityProfile resolve_profile(const RunConfig& c) {
  FeasibilityProfile p = (c.profile == "five_vertex" && c.constants == "text") ? FeasibilityProfile::five_vertex_text()
                                                                             : FeasibilityProfile::by_name(c.profile);
  if (c.area_min) p.area_min = *c.area_min;
  if (c.coord_max) p.coord_max = *c.coord_max;
  return p;
}

struct TheoremBound {
  const char* name;
  double value;
};

std::optional<TheoremBound> bound_for(std::size_t vertices) {
  switch (vertices) {
    case 4: return TheoremBound{"216*sqrt(3)", constants::kTetrahedronBound};
    case 5: return TheoremBound{"243*sqrt(2)", constants::kBipyramidBound};
    case 6: return TheoremBound{"108*sqrt(3)", constants::kOctahedronBound};
    default: return std::nullopt;
  }
}

StrangeParams params_of(const RunConfig& c) {
  return {c.params[0], c.params[1], c.params[2], c.params[3], c.params[4]};
}

void print_report(std::ostream& out, const ClaimReport& r, Csv& csv) {
  for (const ClaimCheck& c : r.checks) {
    out << "  " << (c.certified ? "ok   " : "FAIL ") << c.name << "  [" << num(c.enclosure.lo()) << ", "
        << num(c.enclosure.hi()) << "]\n";
    csv.row(r.claim, '"' + c.name + '"', num(c.enclosure.lo()), num(c.enclosure.hi()), num(c.threshold),
            c.certified ? "yes" : "no");
  }
}

void print_certificate_summary(std::ostream& out, const Certificate& cert) {
  const CertificateStats& s = cert.stats;
  out << "  profile: " << cert.constraints.profile << "\n"
      << "  threshold: " << num(cert.threshold) << "\n"
      << "  rounding: " << cert.rounding << "\n"
      << "  boxes: " << s.boxes << "\n"
      << "  leaves: " << s.leaves << " (verified " << s.verified << ", infeasible " << s.infeasible << ")\n"
      << "  max_depth: " << s.max_depth << "\n"
      << "  seconds: " << num(s.seconds) << "\n"
      << "  global_margin: " << num(cert.global_margin) << "\n";
}

BranchAndBoundOptions bnb_options(const RunConfig& c) {
  BranchAndBoundOptions o;
  o.threshold = c.threshold;
  o.ratio = c.ratio;
  o.budget = {c.max_boxes, c.max_depth, c.max_seconds};
  o.jobs = c.jobs;
  o.keep_leaves = !c.output.empty();
  o.stream_path = c.stream;
  return o;
}

int certify_mutant6_cmd(const RunConfig& c, std::ostream& out, Csv& csv) {
  const FeasibilityProfile profile = resolve_profile(c);
  const BranchAndBoundOptions opts = bnb_options(c);
  out << "mutant6: S^3 - " << num(c.ratio) << " V^2 > " << num(c.threshold) << "\n";
  try {
    const Certificate cert = certify_mutant6(profile, opts);
    print_certificate_summary(out, cert);
    if (!c.output.empty()) save_certificate(cert, c.output);
    const bool ok = cert.complete && cert.global_margin > c.threshold;
    csv.row("mutant6", "global_margin", num(cert.global_margin), num(cert.global_margin), num(c.threshold),
            ok ? "yes" : "no");
    out << "  certified: " << (ok ? "yes" : "no") << "\n";
    if (!ok) throw CertificationFailed("mutant6", "global margin does not exceed the threshold");
    return kOk;
  } catch (const BudgetExceeded& e) {
    const Certificate& partial = e.partial();
    out << "  budget exceeded: " << e.what() << "\n";
    print_certificate_summary(out, partial);
    out << "  unresolved: " << partial.unresolved << "\n"
        << "  min_unresolved_bound: " << num(partial.min_unresolved_bound) << "\n";
    if (!c.output.empty()) save_certificate(partial, c.output);
    csv.row("mutant6", "min_unresolved_bound", num(partial.min_unresolved_bound),
            num(partial.min_unresolved_bound), num(c.threshold), "budget");
    if (c.fallback && c.threshold > 0.0) {
      BranchAndBoundOptions zero = opts;
      zero.threshold = 0.0;
      zero.keep_leaves = false;
      zero.stream_path.clear();
      out << "fallback: S^3 - " << num(c.ratio) << " V^2 > 0\n";
      try {
        const Certificate cert = certify_mutant6(profile, zero);
        print_certificate_summary(out, cert);
        out << "  certified: yes\n";
      } catch (const BudgetExceeded& again) {
        out << "  budget exceeded: " << again.what() << "\n";
      }
    }
    return kBudgetExceeded;
  }
}

int verify_cmd(const RunConfig& c, std::ostream& out) {
  const Certificate cert = load_certificate(c.verify);
  const CertificateCheck check = verify_certificate(cert);
  out << "certificate: " << c.verify << "\n"
      << "  claim: " << cert.claim << "\n"
      << "  leaves: " << cert.leaves.size() << "\n"
      << "  failures: " << check.failures << "\n"
      << "  measure_error: " << num(check.measure_error) << "\n"
      << "  recomputed_margin: " << num(check.recomputed_margin) << "\n"
      << "  stored_margin: " << num(cert.global_margin) << "\n";
  const bool ok = check.valid && cert.complete && check.recomputed_margin == cert.global_margin;
  out << "  valid: " << (ok ? "yes" : "no") << "\n";
  return ok ? kOk : kCertificationFailed;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void validate(const RunConfig& c) {
  if (c.max_boxes == 0 || c.max_depth <= 0 || !(c.max_seconds > 0.0)) {
    throw DomainError("budgets must be positive");
  }
  if (c.jobs < 1) throw DomainError("--jobs must be at least 1");
  if (!(c.threshold >= 0.0) || !(c.ratio > 0.0)) throw DomainError("thresholds must be non-negative");
  if ((c.area_min && !(*c.area_min > 0.0)) || (c.coord_max && !(*c.coord_max > 0.0))) {
    throw DomainError("area_min and coord_max must be positive");
  }
  if (c.constants != "lemma" && c.constants != "text") throw DomainError("--constants must be lemma or text");
  FeasibilityProfile::by_name(c.profile);
}

void apply_config_json(RunConfig& c, const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string key = it.key();
      std::replace(key.begin(), key.end(), '_', '-');
      const json& v = it.value();
      if (key == "inputs") c.inputs = v.get<std::vector<std::string>>();
      else if (key == "normal") c.normal = v.get<std::array<double, 3>>();
      else if (key == "apex-pair") c.apex_pair = v.get<std::string>();
      else if (key == "out") c.output = v.get<std::string>();
      else if (key == "csv") c.csv = v.get<std::string>();
      else if (key == "stream") c.stream = v.get<std::string>();
      else if (key == "claim") c.claim = v.get<std::string>();
      else if (key == "profile") c.profile = v.get<std::string>();
      else if (key == "constants") c.constants = v.get<std::string>();
      else if (key == "area-min") c.area_min = v.get<double>();
      else if (key == "coord-max") c.coord_max = v.get<double>();
      else if (key == "threshold") c.threshold = v.get<double>();
      else if (key == "ratio") c.ratio = v.get<double>();
      else if (key == "fallback") c.fallback = v.get<bool>();
      else if (key == "verify") c.verify = v.get<std::string>();
      else if (key == "max-boxes") c.max_boxes = v.get<std::uint64_t>();
      else if (key == "max-depth") c.max_depth = v.get<int>();
      else if (key == "max-seconds") c.max_seconds = v.get<double>();
      else if (key == "jobs") c.jobs = v.get<int>();
      else if (key == "params") c.params = v.get<std::array<double, 5>>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "tol") c.tol = v.get<double>();
      else throw ParseError("config: unknown key '" + it.key() + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

int cmd_ratio(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) throw ParseError("ratio: no input files");
  Csv csv(c.csv, "file,vertices,volume,surface,ratio,bound,status");
  int code = kOk;
  for (const std::string& path : c.inputs) {
    const Polytope3 p = load_polytope(path);
    const double v = volume(p);
    const double s = surface_area(p);
    const double r = isoperimetric_ratio(p);
    const Insphere ball = insphere(p);
    const std::size_t n = p.vertices().size();
    out << "file: " << path << "\n"
        << "  vertices: " << n << "\n"
        << "  facets: " << p.facets().size() << "\n"
        << "  volume: " << num(v) << "\n"
        << "  surface: " << num(s) << "\n"
        << "  ratio: " << num(r) << "\n"
        << "  insphere_radius: " << num(ball.radius) << "\n"
        << "  insphere_touching: " << ball.touching.size() << "/" << p.facets().size() << "\n";
    if (ball.touching.size() == p.facets().size()) {
      out << "  circumscribed_ratio: " << num(27.0 * v / (ball.radius * ball.radius * ball.radius)) << "\n";
    }
    std::string status = "INFO";
    std::string bound_text;
    if (const auto b = bound_for(n)) {
      bound_text = num(b->value);
      if (std::abs(r - b->value) <= 1e-6 * b->value) {
        status = "AT-BOUND";
      } else if (r > b->value) {
        status = "ABOVE-BOUND";
      } else {
        status = "BELOW-BOUND";
        code = kCertificationFailed;
      }
      out << "  bound: " << b->name << " = " << bound_text << "\n";
    } else {
      out << "  bound: none for " << n << " vertices\n";
    }
    out << "  status: " << status << "\n";
    csv.row(path, n, num(v), num(s), num(r), bound_text, status);
  }
  return code;
}

int cmd_symmetrize(const RunConfig& c, std::ostream& out) {
  if (c.inputs.size() != 1) throw ParseError("symmetrize: exactly one input file expected");
  const Polytope3 p = load_polytope(c.inputs[0]);
  std::optional<Polytope3> result;
  std::string mode;
  bool preserved = false;
  if (!c.apex_pair.empty()) {
    const TriangulatedBoundary tri = triangulate_boundary(p);
    ApexPair pair{};
    if (c.apex_pair == "auto") {
      const auto found = find_apex_pair(tri);
      if (!found) throw InvalidApexPair("symmetrize: the triangulation has no apex pair");
      pair = *found;
    } else {
      char comma = 0;
      std::istringstream in(c.apex_pair);
      if (!(in >> pair.i >> comma >> pair.j) || comma != ',') {
        throw ParseError("symmetrize: --apex-pair expects 'auto' or 'i,j'");
      }
    }
    BipyramidSymmetral sym = bipyramid_symmetral(tri, pair);
    preserved = isomorphic(tri, sym.triangulation);
    result = std::move(sym.polytope);
    mode = "apex-pair " + std::to_string(pair.i) + "," + std::to_string(pair.j);
  } else {
    if (!c.normal) throw ParseError("symmetrize: --normal or --apex-pair is required");
    const Vec3 u{(*c.normal)[0], (*c.normal)[1], (*c.normal)[2]};
    if (!(norm(u) > 0.0)) throw DegenerateInput("symmetrize: zero normal");
    result = steiner_symmetral(p, u);
    mode = "normal " + num(u.x) + " " + num(u.y) + " " + num(u.z);
  }
  const double v0 = volume(p);
  const double v1 = volume(*result);
  const double s0 = surface_area(p);
  const double s1 = surface_area(*result);
  out << "symmetrize: " << c.inputs[0] << " (" << mode << ")\n"
      << "  vertices: " << p.vertices().size() << " -> " << result->vertices().size() << "\n"
      << "  volume: " << num(v0) << " -> " << num(v1) << " (relative change " << num((v1 - v0) / v0) << ")\n"
      << "  surface: " << num(s0) << " -> " << num(s1) << " (change " << num(s1 - s0) << ")\n";
  if (!c.apex_pair.empty()) out << "  type_preserved: " << (preserved ? "yes" : "no") << "\n";
  if (!c.output.empty()) {
    save_polytope(*result, c.output);
    out << "  written: " << c.output << "\n";
  }
  Csv csv(c.csv, "file,mode,volume_before,volume_after,surface_before,surface_after");
  csv.row(c.inputs[0], mode, num(v0), num(v1), num(s0), num(s1));
  return kOk;
}

int cmd_strange(const RunConfig& c, std::ostream& out) {
  const StrangeParams p = params_of(c);
  const FeasibilityProfile profile = resolve_profile(c);
  if (c.action == "realize") {
    const StrangeBody body = realize(p);
    out << "strange realize\n"
        << "  vertices: " << body.polytope.vertices().size() << "\n"
        << "  surface_hull: " << num(surface_area(body.polytope)) << "\n"
        << "  surface_formula: " << num(strange_S(p)) << "\n"
        << "  volume_hull: " << num(volume(body.polytope)) << "\n"
        << "  volume_formula: " << num(strange_V(p)) << "\n"
        << "  absorbed:";
    for (const std::string& a : body.absorbed) out << ' ' << a;
    out << "\n";
    if (!c.output.empty()) {
      save_polytope(body.polytope, c.output);
      out << "  written: " << c.output << "\n";
    }
    return kOk;
  }
  if (c.action != "eval") throw ParseError("strange: action must be eval or realize");
  const double g = strange_G(p, c.ratio);
  out << "strange eval\n"
      << "  area: " << num(base_area(p)) << "\n"
      << "  surface: " << num(strange_S(p)) << "\n"
      << "  volume: " << num(strange_V(p)) << "\n"
      << "  gap: " << num(g) << "\n"
      << "  ordering: " << (satisfies_ordering(p) ? "yes" : "no") << "\n"
      << "  convexity: " << (satisfies_convexity(p) ? "yes" : "no") << "\n"
      << "  feasible(" << profile.name << "): " << (feasible(p, profile) ? "yes" : "no") << "\n";
  Csv csv(c.csv, "x1,x2,x3,y1,y2,area,surface,volume,gap,feasible");
  csv.row(num(p.x1), num(p.x2), num(p.x3), num(p.y1), num(p.y2), num(base_area(p)), num(strange_S(p)),
          num(strange_V(p)), num(g), feasible(p, profile) ? "yes" : "no");
  return kOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  if (!c.verify.empty()) return verify_cmd(c, out);
  static const std::vector<std::string> kClaims = {"volumeest", "distanceest", "strange5", "mutant6"};
  std::vector<std::string> claims;
  if (c.claim == "all") {
    claims = kClaims;
  } else if (std::find(kClaims.begin(), kClaims.end(), c.claim) != kClaims.end()) {
    claims = {c.claim};
  } else {
    throw ParseError("certify: unknown claim '" + c.claim + "'");
  }
  Csv csv(c.csv, "claim,check,lo,hi,threshold,certified");
  int code = kOk;
  for (const std::string& claim : claims) {
    try {
      if (claim == "volumeest") {
        out << "volumeest\n";
        print_report(out, certify_lemma_volumeest(), csv);
      } else if (claim == "distanceest") {
        out << "distanceest\n";
        print_report(out, certify_lemma_distanceest(c.seed), csv);
      } else if (claim == "strange5") {
        const Strange5Result r = enclose_strange5(c.tol);
        out << "strange5\n"
            << "  argmin: [" << num(r.enclosure.argmin.lo()) << ", " << num(r.enclosure.argmin.hi()) << "]\n"
            << "  minimum: [" << num(r.enclosure.minimum.lo()) << ", " << num(r.enclosure.minimum.hi()) << "]\n"
            << "  evaluations: " << r.enclosure.evaluations << "\n";
        print_report(out, r.report, csv);
        if (!r.report.certified()) code = std::max<int>(code, kCertificationFailed);
      } else {
        const int rc = certify_mutant6_cmd(c, out, csv);
        if (rc != kOk) code = std::max(code, rc);
      }
    } catch (const CertificationFailed& e) {
      out << "  FAILED: " << e.claim() << ": " << e.what() << "\n";
      code = std::max<int>(code, kCertificationFailed);
    }
  }
  return code;
}

int cmd_selftest(const RunConfig& c, std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, auto&& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      out << "  error: " << e.what() << "\n";
    }
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::abs(b); };
  check("regular tetrahedron ratio = 216 sqrt(3)", [&] {
    const std::vector<Vec3> t = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    return close(isoperimetric_ratio(convex_hull(t)), constants::kTetrahedronBound);
  });
  check("regular octahedron ratio = 108 sqrt(3)", [&] {
    const std::vector<Vec3> o = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    return close(isoperimetric_ratio(convex_hull(o)), constants::kOctahedronBound);
  });
  check("triangular bipyramid ratio = 243 sqrt(2)", [&] {
    return close(isoperimetric_ratio(regular_triangle_bipyramid(std::numbers::sqrt2)), constants::kBipyramidBound);
  });
  check("volume estimate thresholds", [] { return certify_lemma_volumeest().certified(); });
  check("distance estimate thresholds", [&] { return certify_lemma_distanceest(c.seed, 50).certified(); });
  check("bipyramid radius minimization", [&] {
    const MinEnclosure m = enclose_strange5(c.tol).enclosure;
    return m.argmin.contains(sqrt(Interval(0.5))) && m.minimum.contains(Interval(243.0));
  });
  check("small box is infeasible", [] {
    const Box5 tiny{{Interval(0, 0.1), Interval(0, 0.1), Interval(0, 0.1), Interval(0, 0.1), Interval(0, 0.1)}};
    BranchAndBoundOptions o;
    const Certificate cert =
        branch_and_bound("tiny", tiny, ConstraintSet::for_profile(FeasibilityProfile::six_vertex()), o);
    return cert.leaves.size() == 1 && cert.leaves[0].status == LeafStatus::Infeasible;
  });
  check("steiner symmetral keeps volume", [] {
    const std::vector<Vec3> pts = {{0, 0, 0}, {2, 0, 0.3}, {0.4, 1.7, -0.2}, {0.5, 0.6, 1.9}, {1.2, 1.1, 0.8}};
    const Polytope3 p = convex_hull(pts);
    const Polytope3 q = steiner_symmetral(p, {0.3, -0.5, 0.8});
    return std::abs(volume(q) - volume(p)) <= 1e-9 * volume(p) && surface_area(q) <= surface_area(p) + 1e-9;
  });
  out << (failures ? "selftest failed: " + std::to_string(failures) + " check(s)\n" : "selftest passed\n");
  return failures ? kCertificationFailed : kOk;
}

namespace {

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--csv", c.csv, "Write a CSV summary to this file");
}

void add_profile(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--profile", c.profile, "six_vertex | five_vertex | five_vertex_text");
  cmd->add_option("--constants", c.constants, "Five-vertex constants: lemma (0.09, 17) or text (0.18, 11)");
  cmd->add_option_function<double>("--area-min", [&c](double v) { c.area_min = v; }, "Override the area bound");
  cmd->add_option_function<double>("--coord-max", [&c](double v) { c.coord_max = v; }, "Override the coordinate cap");
  cmd->add_option("--ratio", c.ratio, "Coefficient of V^2");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  // The config file is applied first so that explicit flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) {
        err << "cannot read config " << argv[i + 1] << "\n";
        return kBadInput;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        apply_config_json(c, ss.str());
      } catch (const Error& e) {
        err << e.what() << "\n";
        return kBadInput;
      }
    }
  }

  CLI::App app{"Isoperimetric ratios, Steiner symmetrization and certified inequalities for 3-polytopes"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default option values");

  auto* ratio = app.add_subcommand("ratio", "Volume, surface, ratio and theorem bound of polytope files");
  ratio->add_option("inputs", c.inputs, "Polytope files (JSON or OFF)")->required();
  add_common(ratio, c);

  auto* sym = app.add_subcommand("symmetrize", "Steiner symmetral of a polytope");
  sym->add_option("input", c.inputs, "Polytope file")->required()->expected(1);
  sym->add_option_function<std::vector<double>>(
         "--normal", [&c](const std::vector<double>& v) { c.normal = std::array<double, 3>{v[0], v[1], v[2]}; },
         "Plane normal")
      ->expected(3);
  sym->add_option("--apex-pair", c.apex_pair, "'auto' or 'i,j': symmetrize along an apex pair");
  sym->add_option("--out", c.output, "Output polytope JSON");
  add_common(sym, c);

  auto* strange = app.add_subcommand("strange", "Evaluate or realize a strange polytope");
  strange->add_option("action", c.action, "eval | realize")->required()->check(CLI::IsMember({"eval", "realize"}));
  strange
      ->add_option_function<std::vector<double>>(
          "--params", [&c](const std::vector<double>& v) { std::copy(v.begin(), v.end(), c.params.begin()); },
          "x1 x2 x3 y1 y2")
      ->expected(5);
  strange->add_option("--out", c.output, "Output polytope JSON (realize)");
  add_profile(strange, c);
  add_common(strange, c);

  auto* cert = app.add_subcommand("certify", "Run certifications");
  cert->add_option("--claim", c.claim, "mutant6 | volumeest | distanceest | strange5 | all");
  cert->add_option("--threshold", c.threshold, "Target margin for mutant6");
  cert->add_flag("--fallback", c.fallback, "After a budget overrun, also certify with threshold 0");
  cert->add_option("--max-boxes", c.max_boxes);
  cert->add_option("--max-depth", c.max_depth);
  cert->add_option("--max-seconds", c.max_seconds);
  cert->add_option("--jobs", c.jobs, "Worker threads for mutant6");
  cert->add_option("--out", c.output, "Certificate JSON output");
  cert->add_option("--stream", c.stream, "Append leaves to this JSON-lines file as they are found");
  cert->add_option("--verify", c.verify, "Re-validate a saved certificate instead of running");
  cert->add_option("--seed", c.seed, "Seed for the sampled premise check");
  cert->add_option("--tol", c.tol, "Enclosure width for one-dimensional minimization");
  add_profile(cert, c);
  add_common(cert, c);

  auto* self = app.add_subcommand("selftest", "Quick consistency checks");
  // --config was applied above; accept it after the subcommand name as well.
  for (CLI::App* sub : {ratio, sym, strange, cert, self}) sub->add_option("--config", config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kBadInput;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    validate(c);
    if (c.command == "ratio") return cmd_ratio(c, out);
    if (c.command == "symmetrize") return cmd_symmetrize(c, out);
    if (c.command == "strange") return cmd_strange(c, out);
    if (c.command == "certify") return cmd_certify(c, out);
    return cmd_selftest(c, out);
  } catch (const CertificationFailed& e) {
    err << "certification failed: " << e.claim() << ": " << e.what() << "\n";
    return kCertificationFailed;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace polyiso::cli
