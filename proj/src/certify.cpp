#include "polyiso/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "polyiso/dual.hpp"
#include "polyiso/strange_formulas.hpp"

namespace polyiso {

// ---------------------------------------------------------------------------
// Constraints

ConstraintSet ConstraintSet::for_profile(const FeasibilityProfile& profile) {
  // Decimal thresholds are widened outward so that the certified set
  // contains the one stated in decimal.
  const double area = decimal_interval(profile.area_min).lo();
  const double cap = decimal_interval(profile.coord_max).hi();
  ConstraintSet cs;
  cs.profile = profile.name;
  cs.constraints = {
      {"x1<=x2", 1, ConstraintKind::X1LeX2, 0.0},
      {"x2<=x3", 1, ConstraintKind::X2LeX3, 0.0},
      {"x2*y1-x1*y2>=0", 2, ConstraintKind::ConvexFirst, 0.0},
      {"(x3-x1)*y2-(x3-x2)*y1>=0", 2, ConstraintKind::ConvexSecond, 0.0},
      {"area>=area_min", 3, ConstraintKind::AreaMin, area},
      {"x3<=coord_max", 4, ConstraintKind::X3Max, cap},
      {"y1<=coord_max", 4, ConstraintKind::Y1Max, cap},
      {"y2<=coord_max", 4, ConstraintKind::Y2Max, cap},
  };
  return cs;
}

Truth ConstraintSet::evaluate(std::size_t k, const Box5& box, Interval* value) const {
  const Interval c = constraints[k].value(box.x1(), box.x2(), box.x3(), box.y1(), box.y2());
  if (value) *value = c;
  if (c.lo() >= 0.0) return Truth::True;
  if (c.hi() < 0.0) return Truth::False;
  return Truth::Unknown;
}

bool ConstraintSet::satisfied(const StrangeParams& p) const {
  if (p.x1 < 0.0 || p.y1 < 0.0 || p.y2 < 0.0) return false;
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const Constraint& c) { return c.value(p.x1, p.x2, p.x3, p.y1, p.y2) >= 0.0; });
}

Box5 root_box(const FeasibilityProfile& profile) {
  const Interval side(0.0, decimal_interval(profile.coord_max).hi());
  return Box5{{side, side, side, side, side}};
}

// ---------------------------------------------------------------------------
// One-dimensional minimization

MinEnclosure certify_min_1d(const IntervalFunction& f, const Interval& domain, double tol,
                            const IntervalFunction& derivative, std::uint64_t max_evaluations) {
  struct Piece {
    Interval x;
    Interval fx;
  };
  MinEnclosure out;
  auto enclose = [&](const Interval& x) {
    ++out.evaluations;
    Interval fx = f(x);
    if (derivative && x.width() > 0.0) {
      const double c = x.mid();
      const Interval mv = f(Interval(c)) + derivative(x) * (x - Interval(c));
      ++out.evaluations;
      fx = Interval(std::max(fx.lo(), mv.lo()), std::min(fx.hi(), mv.hi()));
    }
    return fx;
  };
  // Discard interior pieces on which f is strictly monotone.
  auto monotone_interior = [&](const Interval& x) {
    if (!derivative) return false;
    const Interval d = derivative(x);
    if (d.lo() > 0.0) return x.lo() != domain.lo();
    if (d.hi() < 0.0) return x.hi() != domain.hi();
    return false;
  };

  double upper = std::min(f(Interval(domain.lo())).hi(), f(Interval(domain.hi())).hi());
  std::vector<Piece> work{{domain, enclose(domain)}};
  while (true) {
    std::vector<Piece> next;
    double lower = INFINITY;
    double arg_lo = INFINITY;
    double arg_hi = -INFINITY;
    for (const Piece& p : work) {
      if (p.fx.lo() > upper) continue;
      next.push_back(p);
      lower = std::min(lower, p.fx.lo());
      arg_lo = std::min(arg_lo, p.x.lo());
      arg_hi = std::max(arg_hi, p.x.hi());
    }
    work.swap(next);
    if (work.empty()) throw Error("certify_min_1d: every piece was discarded");
    const bool argmin_tight = arg_hi - arg_lo <= tol;
    const bool min_tight = upper - lower <= tol;
    if (argmin_tight && min_tight) {
      out.argmin = Interval(arg_lo, arg_hi);
      out.minimum = Interval(lower, upper);
      return out;
    }
    if (out.evaluations > max_evaluations) {
      Certificate partial;
      partial.claim = "min_1d";
      partial.min_unresolved_bound = lower;
      throw BudgetExceeded("certify_min_1d: evaluation budget exhausted", std::move(partial));
    }
    next.clear();
    bool progressed = false;
    for (const Piece& p : work) {
      const bool wide = p.x.width() > tol / 4;
      const bool loose = p.fx.lo() < upper - tol / 2;
      const double m = p.x.mid();
      if (!(wide || loose) || m <= p.x.lo() || m >= p.x.hi()) {
        next.push_back(p);
        continue;
      }
      progressed = true;
      for (const Interval& half : {Interval(p.x.lo(), m), Interval(m, p.x.hi())}) {
        if (monotone_interior(half)) continue;
        next.push_back({half, enclose(half)});
      }
      upper = std::min(upper, f(Interval(m)).hi());
      ++out.evaluations;
    }
    work.swap(next);
    if (!progressed) {
      // Floating-point resolution reached; report what is certified.
      double lo = INFINITY, a = INFINITY, b = -INFINITY;
      for (const Piece& p : work) {
        if (p.fx.lo() > upper) continue;
        lo = std::min(lo, p.fx.lo());
        a = std::min(a, p.x.lo());
        b = std::max(b, p.x.hi());
      }
      out.argmin = Interval(a, b);
      out.minimum = Interval(lo, upper);
      return out;
    }
  }
}

// ---------------------------------------------------------------------------
// Closed-form enclosures

Interval schwarz_f(const Interval& s) {
  const Interval a = pi_interval() + s;
  return pow(a, 3) / s;
}

Interval schwarz_ratio(const Interval& s) { return Interval(18.0) * sqrt(schwarz_f(s)); }

Interval schwarz_df_factored(const Interval& s) {
  const Interval pi = pi_interval();
  return sqr(s + pi) * (Interval(2.0) * s - pi) / sqr(s);
}

Interval schwarz_df_expanded(const Interval& s) {
  const Interval pi = pi_interval();
  return (Interval(3.0) * pi * sqr(s) + Interval(2.0) * pow(s, 3) - pow(pi, 3)) / sqr(s);
}

namespace {
template <class T>
T strange5_generic(const T& rho) {
  using std::sqrt;
  const T q = T(1.0) + sqr(rho);
  return Interval(54.0) * sqrt(Interval(3.0)) * (q * sqrt(q) / rho);
}
}  // namespace

Interval strange5_ratio_interval(const Interval& rho) { return strange5_generic(rho); }

Interval strange5_ratio_derivative(const Interval& rho) {
  return strange5_generic(Dual<1>::variable(rho, 0)).d[0];
}

// ---------------------------------------------------------------------------
// Claims

bool ClaimReport::certified() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClaimCheck& c) { return c.certified; });
}

namespace {

ClaimCheck make_check(std::string name, Interval enclosure, double threshold, bool greater) {
  const Interval t = decimal_interval(threshold);
  const bool ok = greater ? enclosure.lo() > t.hi() : enclosure.hi() < t.lo();
  return {std::move(name), enclosure, threshold, greater, ok};
}

void require(const ClaimReport& report) {
  for (const ClaimCheck& c : report.checks) {
    if (!c.certified) throw CertificationFailed(report.claim + ":" + c.name, "not certified: " + c.name);
  }
}

// Proves the sign of df over [a, b] by bisection (depth-limited).
Interval signed_cover(const IntervalFunction& df, double a, double b, bool negative, int depth = 0) {
  const Interval x(a, b);
  const Interval v = df(x);
  if ((negative && v.hi() < 0.0) || (!negative && v.lo() > 0.0) || depth >= 40) return v;
  const double m = x.mid();
  return Interval::hull(signed_cover(df, a, m, negative, depth + 1), signed_cover(df, m, b, negative, depth + 1));
}

// Exact rational a/b with 64-bit parts; enough for the distance estimates.
struct Rational {
  long long num;
  long long den;
};

Rational parse_decimal(const std::string& text) {
  Rational r{0, 1};
  bool frac = false;
  for (char c : text) {
    if (c == '.') {
      frac = true;
      continue;
    }
    r.num = r.num * 10 + (c - '0');
    if (frac) r.den *= 10;
  }
  return r;
}

// 8 r^3 / c^2 > k  <=>  8 rn^3 cd^2 > k rd^3 cn^2 (all positive).
bool distance_claim_exact(const std::string& radius, const std::string& cap, long long k) {
  const Rational r = parse_decimal(radius);
  const Rational c = parse_decimal(cap);
  const __int128 lhs = static_cast<__int128>(8) * r.num * r.num * r.num * c.den * c.den;
  const __int128 rhs = static_cast<__int128>(k) * r.den * r.den * r.den * c.num * c.num;
  return lhs > rhs;
}

}  // namespace

ClaimReport certify_lemma_volumeest() {
  using namespace constants;
  ClaimReport report{"volumeest", {}};
  const struct {
    const char* name;
    double s;
    double bound;
  } points[] = {
      {"18*sqrt(f(0.411))>188", kVolumeEstSixAreaLow, kVolumeEstSixRatio},
      {"18*sqrt(f(5.1))>188", kVolumeEstSixAreaHigh, kVolumeEstSixRatio},
      {"18*sqrt(f(0.09))>344", kVolumeEstFiveAreaLow, kVolumeEstFiveRatio},
      {"18*sqrt(f(15))>344", kVolumeEstFiveAreaHigh, kVolumeEstFiveRatio},
  };
  for (const auto& p : points) {
    report.checks.push_back(make_check(p.name, schwarz_ratio(decimal_interval(p.s)), p.bound, true));
  }

  const Interval half_pi = pi_interval() / Interval(2.0);
  const double dec_end = (half_pi - Interval(0.01)).hi();
  const double inc_start = (half_pi + Interval(0.01)).lo();
  report.checks.push_back(make_check("f'<0 on [0.01,pi/2-0.01] (factored)",
                                     schwarz_df_factored(Interval(0.01, dec_end)), 0.0, false));
  report.checks.push_back(make_check("f'>0 on [pi/2+0.01,20] (factored)",
                                     schwarz_df_factored(Interval(inc_start, 20.0)), 0.0, true));
  report.checks.push_back(make_check("f'<0 on [0.01,pi/2-0.01] (expanded)",
                                     signed_cover(schwarz_df_expanded, 0.01, dec_end, true), 0.0, false));
  report.checks.push_back(make_check("f'>0 on [pi/2+0.01,20] (expanded)",
                                     signed_cover(schwarz_df_expanded, inc_start, 20.0, false), 0.0, true));
  require(report);
  return report;
}

ClaimReport certify_lemma_distanceest(std::uint64_t seed, int samples) {
  using namespace constants;
  ClaimReport report{"distanceest", {}};
  auto enclosure = [](double r, double cap) {
    const Interval ri = decimal_interval(r);
    return Interval(8.0) * pow(ri, 3) / sqr(decimal_interval(cap));
  };
  report.checks.push_back(make_check("8*6.5^3/3.4^2>188 (interval)",
                                     enclosure(kDistanceEstSixRadius, kDistanceEstSixVolumeCap),
                                     kVolumeEstSixRatio, true));
  report.checks.push_back(make_check("8*17^3/10^2>344 (interval)",
                                     enclosure(kDistanceEstFiveRadius, kDistanceEstFiveVolumeCap),
                                     kVolumeEstFiveRatio, true));

  const bool six = distance_claim_exact("6.5", "3.4", 188);
  const bool five = distance_claim_exact("17", "10", 344);
  report.checks.push_back({"8*6.5^3/3.4^2>188 (rational)", Interval(six ? 1.0 : 0.0), 0.5, true, six});
  report.checks.push_back({"8*17^3/10^2>344 (rational)", Interval(five ? 1.0 : 0.0), 0.5, true, five});

  // Premise: S(P) > 2 |v| for every base vertex v of a strange body, since
  // the triangle [v, e3, -e3] has area |v|.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, kDistanceEstSixRadius);
  double worst = INFINITY;
  int checked = 0;
  while (checked < samples) {
    StrangeParams p{coord(rng), coord(rng), coord(rng), coord(rng), coord(rng)};
    std::array<double, 3> xs{p.x1, p.x2, p.x3};
    std::sort(xs.begin(), xs.end());
    p.x1 = xs[0], p.x2 = xs[1], p.x3 = xs[2];
    if (!satisfies_convexity(p) || !(base_area(p) > 1e-3)) continue;
    const StrangeBody body = realize(p);
    const double s = surface_area(body.polytope);
    for (const Vec3& v : body.polytope.vertices()) {
      if (v.z != 0.0) continue;
      worst = std::min(worst, s - 2.0 * norm(v));
    }
    ++checked;
  }
  report.checks.push_back({"S(P)>2|v_i| on random strange bodies", Interval(worst), 0.0, true, worst > 0.0});
  require(report);
  return report;
}

Strange5Result enclose_strange5(double tol) {
  const MinEnclosure m = certify_min_1d(strange5_ratio_interval, Interval(0.1, 100.0), tol,
                                        strange5_ratio_derivative);
  ClaimReport report{"strange5", {}};
  auto contains = [&](std::string name, const Interval& enc, const Interval& target, double nominal) {
    const bool ok = enc.contains(target) && enc.width() <= tol;
    report.checks.push_back({std::move(name), enc, nominal, true, ok});
  };
  const Interval half_sqrt2 = sqrt(Interval(0.5));
  const Interval sqrt2 = sqrt(Interval(2.0));
  contains("argmin contains sqrt(1/2)", m.argmin, half_sqrt2, std::sqrt(0.5));
  contains("minimum contains 243", m.minimum, Interval(243.0), 243.0);
  contains("argmin contains sqrt(2)", m.argmin, sqrt2, std::numbers::sqrt2);
  contains("minimum contains 243*sqrt(2)", m.minimum, Interval(243.0) * sqrt2, constants::kBipyramidBound);
  return {m, report};
}

Strange5Result certify_strange5(double tol) {
  Strange5Result r = enclose_strange5(tol);
  require(r.report);
  return r;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {
double radical_inverse(std::uint64_t n, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return r;
}
}  // namespace

SampleSummary sample_feasible_gap(const FeasibilityProfile& profile, std::uint64_t feasible_target,
                                  double threshold, double ratio) {
  static constexpr std::uint64_t kBases[5] = {2, 3, 5, 7, 11};
  SampleSummary s;
  const double cap = profile.coord_max;
  for (std::uint64_t n = 1; s.feasible < feasible_target; ++n) {
    ++s.generated;
    std::array<double, 5> u{};
    for (int k = 0; k < 5; ++k) u[k] = cap * radical_inverse(n, kBases[k]);
    std::sort(u.begin(), u.begin() + 3);
    const StrangeParams p{u[0], u[1], u[2], u[3], u[4]};
    if (!feasible(p, profile)) continue;
    ++s.feasible;
    const double g = strange_G(p, ratio);
    if (g <= threshold) ++s.below_threshold;
    if (g < s.min_gap) {
      s.min_gap = g;
      s.argmin = p;
    }
  }
  return s;
}

}  // namespace polyiso
