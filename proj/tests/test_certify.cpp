#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "polyiso/certificate_io.hpp"
#include "polyiso/certify.hpp"
#include "polyiso/symmetrize.hpp"
#include "support.hpp"

using namespace polyiso;
using testing::rel;

namespace {

Box5 make_box(std::initializer_list<std::pair<double, double>> sides) {
  Box5 b;
  int i = 0;
  for (const auto& [lo, hi] : sides) b.v[i++] = Interval(lo, hi);
  return b;
}

const ConstraintSet& six_constraints() {
  static const ConstraintSet cs = ConstraintSet::for_profile(FeasibilityProfile::six_vertex());
  return cs;
}

BranchAndBoundOptions small_options() {
  BranchAndBoundOptions o;
  o.budget = {200'000, 200, 300.0};
  return o;
}

// Crosses constraint boundaries; G comes within 1e-4 of the threshold.
Box5 corner_root() { return make_box({{0.5, 1.5}, {1, 2}, {2, 3}, {0, 2}, {1, 2}}); }

const Certificate& corner_certificate() {
  static const Certificate c = branch_and_bound("mutant6", corner_root(), six_constraints(), small_options());
  return c;
}

StrangeParams sample_in(const Box5& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x[5];
  for (int i = 0; i < 5; ++i) x[i] = b.v[i].lo() + u(rng) * (b.v[i].hi() - b.v[i].lo());
  return {x[0], x[1], x[2], x[3], x[4]};
}

}  // namespace

TEST_CASE("one-dimensional minimization") {
  // (pi + s)^3 / s is minimal at s = pi / 2 with value 27 pi^2 / 4.
  const MinEnclosure m = certify_min_1d(schwarz_f, Interval(0.05, 20.0), 1e-7, schwarz_df_factored);
  CHECK(m.argmin.contains(M_PI / 2));
  CHECK(m.minimum.contains(66.61982970735317068));
  CHECK(m.argmin.width() <= 1e-7);
  CHECK(m.minimum.width() <= 1e-7);
  CHECK(rel(schwarz_ratio(Interval(M_PI / 2)).mid(), 146.9177485) < 1e-9);

  // Without a derivative the same enclosure is reached, only slower.
  const MinEnclosure plain = certify_min_1d(schwarz_f, Interval(0.05, 20.0), 1e-6);
  CHECK(plain.argmin.contains(M_PI / 2));
  CHECK(plain.evaluations > 0);

  // Jensen bound along (1, 1, t): minimal at t = 1.
  auto h = [](const Interval& t) {
    const Interval s = Interval(2.0) + Interval(1.0) / sqr(t);
    return Interval(36.0) * t * s * sqrt(s);
  };
  const MinEnclosure j = certify_min_1d(h, Interval(0.1, 10.0), 1e-6);
  CHECK(j.argmin.contains(1.0));
  CHECK(j.minimum.contains(jensen_bound(1, 1, 1)));

  CHECK_THROWS_AS(certify_min_1d(schwarz_f, Interval(0.05, 20.0), 1e-12, {}, 100), BudgetExceeded);
}

TEST_CASE("volume estimate claims") {
  const ClaimReport r = certify_lemma_volumeest();
  CHECK(r.certified());
  REQUIRE(r.checks.size() == 8);
  // 40-digit evaluations of 18 sqrt((pi + s)^3 / s).
  const double oracle[] = {188.00513625577014, 188.58369255783318, 348.55889380745149, 359.12033072981613};
  for (int i = 0; i < 4; ++i) {
    CHECK(r.checks[i].enclosure.contains(oracle[i]));
    CHECK(r.checks[i].enclosure.width() < 1e-11);
    CHECK(r.checks[i].enclosure.lo() > r.checks[i].threshold);
  }
  // The tightest one: 188.0051 is only 0.005 above 188.
  CHECK(r.checks[0].enclosure.lo() - 188.0 < 0.01);
}

TEST_CASE("distance estimate claims") {
  const ClaimReport r = certify_lemma_distanceest(7, 200);
  CHECK(r.certified());
  CHECK(r.checks[0].enclosure.contains(190.05190311418685));
  CHECK(r.checks[1].enclosure.contains(393.04));
  CHECK(certify_lemma_distanceest(8, 50).certified());
}

TEST_CASE("bipyramid minimum") {
  const Strange5Result r = enclose_strange5(1e-6);
  CHECK(r.enclosure.argmin.contains(1 / std::sqrt(2.0)));
  CHECK(r.enclosure.minimum.contains(243.0));
  CHECK_FALSE(r.enclosure.argmin.contains(std::sqrt(2.0)));
  CHECK_FALSE(r.enclosure.minimum.contains(243 * std::sqrt(2.0)));
  REQUIRE(r.report.checks.size() == 4);
  CHECK(r.report.checks[0].certified);
  CHECK(r.report.checks[1].certified);
  CHECK_FALSE(r.report.checks[2].certified);
  CHECK_FALSE(r.report.checks[3].certified);
  CHECK_THROWS_AS(certify_strange5(1e-6), CertificationFailed);
}

TEST_CASE("constraints on boxes") {
  const ConstraintSet& cs = six_constraints();
  CHECK(cs.constraints.size() == 8);
  CHECK(cs.satisfied({0, 1, 1, 1, 1}));
  CHECK_FALSE(cs.satisfied({0, 0.1, 0.2, 0.1, 0.1}));

  const Box5 tiny = make_box({{0, 0.1}, {0, 0.1}, {0, 0.1}, {0, 0.1}, {0, 0.1}});
  bool some_false = false;
  for (std::size_t k = 0; k < cs.constraints.size(); ++k) {
    if (cs.evaluate(k, tiny) == Truth::False) some_false = true;
  }
  CHECK(some_false);
  const Box5 root = root_box(FeasibilityProfile::six_vertex());
  for (const Interval& side : root.v) CHECK(side == Interval(0.0, 6.5));
}

TEST_CASE("small roots") {
  const BranchAndBoundOptions opt = small_options();
  const Certificate empty =
      branch_and_bound("mutant6", make_box({{0, 0.1}, {0, 0.1}, {0, 0.1}, {0, 0.1}, {0, 0.1}}), six_constraints(), opt);
  CHECK(empty.complete);
  REQUIRE(empty.leaves.size() == 1);
  CHECK(empty.leaves[0].status == LeafStatus::Infeasible);
  CHECK(six_constraints().constraints.at(empty.leaves[0].constraint).name == "area>=area_min");
  CHECK(std::isinf(empty.global_margin));

  const Box5 near_unit = make_box({{0, 1e-3}, {1, 1.001}, {1.001, 1.002}, {1, 1.001}, {1, 1.001}});
  const Certificate one = branch_and_bound("mutant6", near_unit, six_constraints(), opt);
  REQUIRE(one.leaves.size() == 1);
  CHECK(one.leaves[0].status == LeafStatus::Verified);
  CHECK(one.global_margin < 114.6793647554425);
  CHECK(one.global_margin > 110.0);
}

TEST_CASE("corner certificate") {
  const Certificate& c = corner_certificate();
  CHECK(c.complete);
  CHECK(c.stats.leaves == c.leaves.size());
  CHECK(c.stats.verified + c.stats.infeasible == c.stats.leaves);
  CHECK(c.stats.verified > 0);
  CHECK(c.stats.infeasible > 0);
  CHECK(c.global_margin > 3.44);
  CHECK(c.global_margin < 3.4401);
  CHECK(rel(c.stats.leaf_measure, c.root.measure()) < 1e-9);

  const CertificateCheck check = verify_certificate(c);
  CHECK(check.valid);
  CHECK(check.failures == 0);
  CHECK(check.recomputed_margin == c.global_margin);

  // Each verified bound holds at random feasible points of its box.
  std::mt19937_64 rng(5);
  std::uint64_t tested = 0;
  for (const Leaf& leaf : c.leaves) {
    for (int k = 0; k < 4; ++k) {
      const StrangeParams p = sample_in(leaf.box, rng);
      if (leaf.status == LeafStatus::Infeasible) {
        REQUIRE_FALSE(six_constraints().satisfied(p));
      } else if (six_constraints().satisfied(p)) {
        REQUIRE(strange_G(p) >= leaf.bound - 1e-9 * std::abs(leaf.bound));
        ++tested;
      }
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("certificates round-trip and are checked") {
  const Certificate& c = corner_certificate();
  const std::string text = certificate_to_json(c);
  const Certificate back = certificate_from_json(text);
  CHECK(certificate_to_json(back) == text);
  CHECK(back.leaves.size() == c.leaves.size());
  CHECK(back.global_margin == c.global_margin);
  CHECK(verify_certificate(back).valid);

  Certificate dropped = back;
  dropped.leaves.pop_back();
  CHECK_FALSE(verify_certificate(dropped).valid);

  Certificate flipped = back;
  for (Leaf& leaf : flipped.leaves) {
    if (leaf.status == LeafStatus::Verified) {
      leaf.status = LeafStatus::Infeasible;
      break;
    }
  }
  CHECK_FALSE(verify_certificate(flipped).valid);

  Certificate raised = back;
  raised.threshold = 1e6;
  CHECK_FALSE(verify_certificate(raised).valid);

  CHECK_THROWS_AS(certificate_from_json("{\"claim\": 3"), ParseError);
  CHECK_THROWS_AS(certificate_from_json("[]"), ParseError);
}

TEST_CASE("worker count does not change the result") {
  BranchAndBoundOptions opt = small_options();
  opt.jobs = 2;
  const Certificate two = branch_and_bound("mutant6", corner_root(), six_constraints(), opt);
  const Certificate& one = corner_certificate();
  CHECK(two.stats.boxes == one.stats.boxes);
  CHECK(two.global_margin == one.global_margin);
  REQUIRE(two.leaves.size() == one.leaves.size());
  bool same = true;
  for (std::size_t i = 0; i < one.leaves.size(); ++i) {
    same = same && leaf_json_line(one.leaves[i]) == leaf_json_line(two.leaves[i]);
  }
  CHECK(same);
}

TEST_CASE("budget exhaustion returns a partial certificate") {
  BranchAndBoundOptions opt = small_options();
  opt.budget.max_boxes = 50;
  try {
    branch_and_bound("mutant6", corner_root(), six_constraints(), opt);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    const Certificate& p = e.partial();
    CHECK_FALSE(p.complete);
    CHECK(p.unresolved > 0);
    CHECK(p.stats.boxes <= 50 + 1);
    CHECK(std::isfinite(e.min_unresolved_bound()));
    CHECK(e.min_unresolved_bound() <= corner_certificate().global_margin);
  }
}

TEST_CASE("feasible sampling") {
  const SampleSummary s = sample_feasible_gap(FeasibilityProfile::six_vertex(), 2000, 3.44);
  CHECK(s.feasible == 2000);
  CHECK(s.generated >= s.feasible);
  CHECK(s.below_threshold == 0);
  CHECK(s.min_gap > 3.44);
  CHECK(FeasibilityProfile::six_vertex().name == "six_vertex");
  CHECK(feasible(s.argmin, FeasibilityProfile::six_vertex()));
  CHECK(rel(strange_G(s.argmin), s.min_gap) < 1e-12);
}
