#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polyiso/error.hpp"
#include "polyiso/interval.hpp"
#include "polyiso/strange.hpp"

namespace polyiso {

// ---------------------------------------------------------------------------
// Constraints

enum class ConstraintKind {
  X1LeX2,        // ordering: x2 - x1 >= 0
  X2LeX3,        // ordering: x3 - x2 >= 0
  ConvexFirst,   // convex position: x2 y1 - x1 y2 >= 0
  ConvexSecond,  // convex position: (x3 - x1) y2 - (x3 - x2) y1 >= 0
  AreaMin,       // area: |Q| - bound >= 0
  X3Max,         // coordinate cap: bound - x3 >= 0
  Y1Max,         // coordinate cap: bound - y1 >= 0
  Y2Max,         // coordinate cap: bound - y2 >= 0
};

/// One inequality c(x) >= 0 of the feasible set.
struct Constraint {
  std::string name;
  int condition = 0;  // group: 1 ordering, 2 convex position, 3 area, 4 coordinate cap
  ConstraintKind kind = ConstraintKind::X1LeX2;
  double bound = 0.0;

  /// c(x); feasible iff >= 0. Generic over double / Interval / Dual.
  template <class T>
  T value(const T& x1, const T& x2, const T& x3, const T& y1, const T& y2) const;
};

enum class Truth { True, False, Unknown };

struct ConstraintSet {
  std::string profile;
  std::vector<Constraint> constraints;

  /// Ordering, both convex-position forms, the area bound with area_min and
  /// the coordinate cap with coord_max. Non-negativity of x1, y1, y2 is carried by the root box.
  static ConstraintSet for_profile(const FeasibilityProfile& profile);
  /// Certainly-true / certainly-false / unknown on the box; `value` receives
  /// the constraint's interval enclosure.
  Truth evaluate(std::size_t k, const Box5& box, Interval* value = nullptr) const;
  bool satisfied(const StrangeParams& p) const;
};

/// [0, coord_max]^5.
Box5 root_box(const FeasibilityProfile& profile);

// ---------------------------------------------------------------------------
// Certificates

enum class LeafStatus { Infeasible, Verified };

/// How a verified leaf's lower bound was obtained.
enum class BoundMethod { None, Natural, MeanValue, CubeRoot, Lagrangian };

struct Leaf {
  Box5 box;
  LeafStatus status = LeafStatus::Verified;
  int depth = 0;
  /// Verified: rigorous lower bound of G over the feasible part of the box.
  /// Infeasible: upper end of the violated constraint's enclosure (< 0).
  double bound = 0.0;
  /// Infeasible: index of the violated constraint. Lagrangian: index of the
  /// relaxed constraint.
  int constraint = -1;
  BoundMethod method = BoundMethod::None;
  /// CubeRoot: the bound comes from S - cbrt(threshold + ratio V^2) > 0.
  /// Lagrangian multiplier (>= 0) when method == Lagrangian.
  double multiplier = 0.0;
};

struct CertificateStats {
  std::uint64_t boxes = 0;  // boxes examined, leaves and split boxes
  std::uint64_t leaves = 0;
  std::uint64_t verified = 0;
  std::uint64_t infeasible = 0;
  int max_depth = 0;
  double seconds = 0.0;
  /// Sum of leaf box measures (compared with the root's).
  double leaf_measure = 0.0;
};

struct Certificate {
  std::string claim;
  double threshold = 0.0;
  double ratio = 188.0;
  std::string rounding{kRoundingStrategy};
  Box5 root;
  ConstraintSet constraints;
  /// Canonically sorted by box coordinates. Empty if leaves were not kept.
  std::vector<Leaf> leaves;
  CertificateStats stats;
  /// Minimum verified lower bound; +inf when there are no verified leaves.
  double global_margin = std::numeric_limits<double>::infinity();
  bool complete = false;
  /// Partial runs only: the smallest lower bound of G over unresolved boxes.
  double min_unresolved_bound = std::numeric_limits<double>::infinity();
  std::uint64_t unresolved = 0;
};

struct Budget {
  std::uint64_t max_boxes = 20'000'000;
  int max_depth = 200;
  double max_seconds = 3600.0;
};

struct BranchAndBoundOptions {
  double threshold = constants::kSixVertexMargin;
  double ratio = constants::kVolumeEstSixRatio;
  Budget budget;
  int jobs = 1;
  /// Retain leaves in the certificate (stats are always kept).
  bool keep_leaves = true;
  /// When non-empty, every leaf is appended to this file as one JSON line as
  /// soon as it is resolved.
  std::string stream_path;
  /// Use mean-value and Lagrangian bounds in addition to natural extension.
  bool refined_bounds = true;
  /// Called once per leaf as soon as it is resolved, possibly from several
  /// worker threads at once.
  std::function<void(const Leaf&)> on_leaf;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, Certificate partial)
      : Error(what), partial_(std::move(partial)) {}
  const Certificate& partial() const noexcept { return partial_; }
  double min_unresolved_bound() const noexcept { return partial_.min_unresolved_bound; }

 private:
  Certificate partial_;
};

/// Outcome of examining one box.
struct BoxVerdict {
  std::optional<Leaf> leaf;  // set when the box is resolved
  double lower_bound = -std::numeric_limits<double>::infinity();  // best G bound found
};

/// Classifies one box: infeasible, verified (lower bound > threshold), or
/// unresolved. Shared by the search and by certificate re-validation.
BoxVerdict examine_box(const Box5& box, const ConstraintSet& cs, double threshold, double ratio,
                       bool refined_bounds = true);

/// Work-queue subdivision of `root`: a box is an infeasible leaf if some
/// constraint is certainly false, a verified leaf if a lower bound of G over
/// its feasible part exceeds the threshold, and is otherwise split at the
/// midpoint of its widest side (ties: lowest axis). Throws BudgetExceeded
/// with the partial certificate when a limit is hit. The result does not
/// depend on `jobs`.
Certificate branch_and_bound(const std::string& claim, const Box5& root, const ConstraintSet& cs,
                             const BranchAndBoundOptions& options);

/// branch_and_bound over root_box(profile) for S^3 - ratio V^2 > threshold.
Certificate certify_mutant6(const FeasibilityProfile& profile, const BranchAndBoundOptions& options);

struct CertificateCheck {
  bool valid = false;
  std::uint64_t failures = 0;
  double recomputed_margin = std::numeric_limits<double>::infinity();
  double measure_error = 0.0;  // |sum leaf measures - root measure| / root measure
};

/// Re-evaluates every leaf's status from scratch.
CertificateCheck verify_certificate(const Certificate& cert);

// ---------------------------------------------------------------------------
// One-dimensional certified minimization

struct MinEnclosure {
  Interval argmin;
  Interval minimum;
  std::uint64_t evaluations = 0;
};

using IntervalFunction = std::function<Interval(const Interval&)>;

/// Interval bisection on `domain`: subintervals whose lower bound exceeds the
/// best known upper bound are discarded. When `derivative` is supplied, an
/// interior subinterval on which it has constant sign is discarded as well,
/// and the mean-value form tightens the value enclosure. Stops once both the
/// argmin hull and the minimum enclosure are at most `tol` wide. Throws
/// BudgetExceeded when more than `max_evaluations` are needed.
MinEnclosure certify_min_1d(const IntervalFunction& f, const Interval& domain, double tol,
                            const IntervalFunction& derivative = {}, std::uint64_t max_evaluations = 50'000'000);

// ---------------------------------------------------------------------------
// Claim checks

struct ClaimCheck {
  std::string name;
  Interval enclosure;
  double threshold = 0.0;
  bool greater = true;  // claim is enclosure > threshold (else < threshold)
  bool certified = false;
};

struct ClaimReport {
  std::string claim;
  std::vector<ClaimCheck> checks;
  bool certified() const;
};

/// Schwarz-rounding function f(s) = (pi + s)^3 / s and its derivative.
Interval schwarz_f(const Interval& s);
Interval schwarz_ratio(const Interval& s);  // 18 sqrt(f(s))
Interval schwarz_df_factored(const Interval& s);  // (s + pi)^2 (2 s - pi) / s^2
Interval schwarz_df_expanded(const Interval& s);  // (-pi^3 + 3 pi s^2 + 2 s^3) / s^2

/// 54 sqrt(3) (1 + rho^2)^{3/2} / rho and its derivative.
Interval strange5_ratio_interval(const Interval& rho);
Interval strange5_ratio_derivative(const Interval& rho);

/// Four threshold claims of the volume estimate plus the sign of f' on
/// [0.01, pi/2 - 0.01] (negative) and [pi/2 + 0.01, 20] (positive), each
/// with the factored and the expanded form. Throws CertificationFailed.
ClaimReport certify_lemma_volumeest();

/// 8 * 6.5^3 / 3.4^2 > 188 and 8 * 17^3 / 10^2 > 344, by interval and by
/// exact rational arithmetic, plus the premise S(P) > 2 |v_i| on `samples`
/// random strange bodies. Throws CertificationFailed.
ClaimReport certify_lemma_distanceest(std::uint64_t seed = 7, int samples = 200);

struct Strange5Result {
  MinEnclosure enclosure;
  ClaimReport report;
};

/// Certified minimization of strange5_ratio over [0.1, 100]. The report
/// checks the enclosures against both (1/sqrt(2), 243) and (sqrt(2),
/// 243 sqrt(2)); only the first pair holds.
Strange5Result enclose_strange5(double tol = 1e-6);

/// enclose_strange5 that throws CertificationFailed unless every check of
/// the report holds, i.e. unless the minimizer is sqrt(2).
Strange5Result certify_strange5(double tol = 1e-6);

// ---------------------------------------------------------------------------
// Sampling cross-check

struct SampleSummary {
  std::uint64_t generated = 0;
  std::uint64_t feasible = 0;
  std::uint64_t below_threshold = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  StrangeParams argmin;
};

/// Halton points in [0, coord_max]^5 (x-coordinates sorted), filtered to the
/// feasible set, until `feasible_target` feasible samples are evaluated.
SampleSummary sample_feasible_gap(const FeasibilityProfile& profile, std::uint64_t feasible_target,
                                  double threshold, double ratio = 188.0);

}  // namespace polyiso

#include "polyiso/certify_inl.hpp"
