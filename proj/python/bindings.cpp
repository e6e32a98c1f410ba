#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyiso/certify.hpp"
#include "polyiso/polytope_io.hpp"
#include "polyiso/strange.hpp"
#include "polyiso/symmetrize.hpp"

namespace py = pybind11;
using namespace polyiso;

namespace {

using Point = std::array<double, 3>;

std::vector<Vec3> to_vecs(const std::vector<Point>& pts) {
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back({p[0], p[1], p[2]});
  return out;
}

Point to_point(const Vec3& v) { return {v.x, v.y, v.z}; }

std::vector<Point> points_of(const Polytope3& p) {
  std::vector<Point> out;
  for (const Vec3& v : p.vertices()) out.push_back(to_point(v));
  return out;
}

StrangeParams params_of(const std::array<double, 5>& p) { return {p[0], p[1], p[2], p[3], p[4]}; }

py::tuple pair(const Interval& x) { return py::make_tuple(x.lo(), x.hi()); }

py::dict report_dict(const ClaimReport& r) {
  py::list checks;
  for (const ClaimCheck& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["enclosure"] = pair(c.enclosure);
    d["threshold"] = c.threshold;
    d["certified"] = c.certified;
    checks.append(d);
  }
  py::dict out;
  out["claim"] = r.claim;
  out["certified"] = r.certified();
  out["checks"] = checks;
  return out;
}

py::dict certificate_dict(const Certificate& c) {
  py::dict d;
  d["claim"] = c.claim;
  d["threshold"] = c.threshold;
  d["complete"] = c.complete;
  d["global_margin"] = c.global_margin;
  d["boxes"] = c.stats.boxes;
  d["leaves"] = c.stats.leaves;
  d["verified"] = c.stats.verified;
  d["infeasible"] = c.stats.infeasible;
  d["max_depth"] = c.stats.max_depth;
  d["seconds"] = c.stats.seconds;
  d["unresolved"] = c.unresolved;
  d["min_unresolved_bound"] = c.min_unresolved_bound;
  return d;
}

Box5 box_of(const std::array<std::array<double, 2>, 5>& b) {
  Box5 out;
  for (int i = 0; i < Box5::kDim; ++i) out.v[i] = Interval(b[i][0], b[i][1]);
  return out;
}

BranchAndBoundOptions options(double threshold, double ratio, std::uint64_t max_boxes, int max_depth,
                              double max_seconds, int jobs) {
  BranchAndBoundOptions o;
  o.threshold = threshold;
  o.ratio = ratio;
  o.budget = {max_boxes, max_depth, max_seconds};
  o.jobs = jobs;
  o.keep_leaves = false;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Isoperimetric ratios, Steiner symmetrals and certified bounds for convex 3-polytopes.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<InvalidApexPair>(m, "InvalidApexPair", error.ptr());
  py::register_exception<NotOctahedralType>(m, "NotOctahedralType", error.ptr());
  py::register_exception<CertificationFailed>(m, "CertificationFailed", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());

  py::class_<Polytope3>(m, "Polytope")
      .def_property_readonly("vertices", &points_of)
      .def_property_readonly("facets",
                             [](const Polytope3& p) {
                               std::vector<std::vector<int>> out;
                               for (const Facet& f : p.facets()) out.push_back(f.cycle);
                               return out;
                             })
      .def_property_readonly("volume", [](const Polytope3& p) { return volume(p); })
      .def_property_readonly("surface_area", [](const Polytope3& p) { return surface_area(p); })
      .def_property_readonly("ratio", [](const Polytope3& p) { return isoperimetric_ratio(p); })
      .def("__repr__", [](const Polytope3& p) {
        return "<Polytope with " + std::to_string(p.vertices().size()) + " vertices, " +
               std::to_string(p.facets().size()) + " facets>";
      });

  m.def("convex_hull", [](const std::vector<Point>& pts) { return convex_hull(to_vecs(pts)); }, py::arg("points"));
  m.def("load_polytope", &load_polytope, py::arg("path"));
  m.def("volume", &volume);
  m.def("surface_area", &surface_area);
  m.def("isoperimetric_ratio", &isoperimetric_ratio);
  m.def("insphere", [](const Polytope3& p) {
    const Insphere s = insphere(p);
    return py::make_tuple(to_point(s.center), s.radius, s.touching);
  });

  m.def(
      "steiner_symmetral",
      [](const Polytope3& p, const Point& n) { return steiner_symmetral(p, {n[0], n[1], n[2]}); },
      py::arg("polytope"), py::arg("normal"));
  m.def("find_apex_pair", [](const Polytope3& p) -> std::optional<std::pair<int, int>> {
    const auto found = find_apex_pair(triangulate_boundary(p));
    if (!found) return std::nullopt;
    return std::pair{found->i, found->j};
  });
  m.def(
      "bipyramid_symmetral",
      [](const Polytope3& p, int i, int j) {
        const TriangulatedBoundary t = triangulate_boundary(p);
        BipyramidSymmetral s = bipyramid_symmetral(t, {i, j});
        const bool preserved = isomorphic(t, s.triangulation);
        return py::make_tuple(std::move(s.polytope), preserved);
      },
      py::arg("polytope"), py::arg("i"), py::arg("j"));
  m.def("octahedral_pipeline", [](const Polytope3& p) {
    OctahedralReduction r = octahedral_pipeline(p);
    return py::make_tuple(r.half_diagonals, std::move(r.result));
  });
  m.def("jensen_bound", &jensen_bound, py::arg("t1"), py::arg("t2"), py::arg("t3"));

  m.def("strange_S", [](const std::array<double, 5>& p) { return strange_S(params_of(p)); });
  m.def("strange_V", [](const std::array<double, 5>& p) { return strange_V(params_of(p)); });
  m.def(
      "strange_G", [](const std::array<double, 5>& p, double ratio) { return strange_G(params_of(p), ratio); },
      py::arg("params"), py::arg("ratio") = 188.0);
  m.def(
      "feasible",
      [](const std::array<double, 5>& p, const std::string& profile) {
        return feasible(params_of(p), FeasibilityProfile::by_name(profile));
      },
      py::arg("params"), py::arg("profile") = "six_vertex");
  m.def("realize", [](const std::array<double, 5>& p) {
    StrangeBody b = realize(params_of(p));
    return py::make_tuple(std::move(b.polytope), b.absorbed);
  });
  m.def("strange5_ratio", &strange5_ratio, py::arg("rho"));

  m.def(
      "eval_G",
      [](const std::array<std::array<double, 2>, 5>& box, double ratio) { return pair(eval_G(box_of(box), ratio)); },
      py::arg("box"), py::arg("ratio") = 188.0);

  m.def("certify_volumeest", [] { return report_dict(certify_lemma_volumeest()); });
  m.def(
      "certify_distanceest",
      [](std::uint64_t seed, int samples) { return report_dict(certify_lemma_distanceest(seed, samples)); },
      py::arg("seed") = 7, py::arg("samples") = 200);
  m.def(
      "enclose_strange5",
      [](double tol) {
        const Strange5Result r = enclose_strange5(tol);
        py::dict d = report_dict(r.report);
        d["argmin"] = pair(r.enclosure.argmin);
        d["minimum"] = pair(r.enclosure.minimum);
        return d;
      },
      py::arg("tol") = 1e-6);

  m.def(
      "branch_and_bound",
      [](const std::array<std::array<double, 2>, 5>& root, const std::string& profile, double threshold, double ratio,
         std::uint64_t max_boxes, int max_depth, double max_seconds, int jobs) {
        const ConstraintSet cs = ConstraintSet::for_profile(FeasibilityProfile::by_name(profile));
        const auto opt = options(threshold, ratio, max_boxes, max_depth, max_seconds, jobs);
        Certificate c;
        {
          py::gil_scoped_release release;
          c = branch_and_bound("mutant6", box_of(root), cs, opt);
        }
        return certificate_dict(c);
      },
      py::arg("root"), py::arg("profile") = "six_vertex", py::arg("threshold") = 3.44, py::arg("ratio") = 188.0,
      py::arg("max_boxes") = 1'000'000, py::arg("max_depth") = 200, py::arg("max_seconds") = 600.0,
      py::arg("jobs") = 1);
  m.def(
      "certify_mutant6",
      [](const std::string& profile, double threshold, std::uint64_t max_boxes, double max_seconds, int jobs) {
        const auto opt = options(threshold, 188.0, max_boxes, 200, max_seconds, jobs);
        Certificate c;
        {
          py::gil_scoped_release release;
          c = certify_mutant6(FeasibilityProfile::by_name(profile), opt);
        }
        return certificate_dict(c);
      },
      py::arg("profile") = "six_vertex", py::arg("threshold") = 3.44, py::arg("max_boxes") = 20'000'000,
      py::arg("max_seconds") = 3600.0, py::arg("jobs") = 1);
}
