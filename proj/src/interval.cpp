#include "polyiso/interval.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <limits>
#include <ostream>

#include "polyiso/error.hpp"
#include "polyiso/strange_formulas.hpp"

namespace polyiso {

namespace rounding {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude FMA residuals may themselves be rounded; nudge
// unconditionally instead of trusting their sign.
constexpr double kTiny = 1e-290;

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

double checked(double x) {
  if (!std::isfinite(x)) throw OverflowError("interval endpoint overflow");
  return x;
}

// s + err == a + b exactly.
double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double mul_down(double a, double b);
double mul_up(double a, double b);

namespace {
// r^3 rounded up / down, valid for either sign of r.
double pow_odd_up(double r) {
  return r >= 0.0 ? mul_up(mul_up(r, r), r) : mul_up(mul_down(r, r), r);
}
double pow_odd_down(double r) {
  return r >= 0.0 ? mul_down(mul_down(r, r), r) : mul_down(mul_up(r, r), r);
}
}  // namespace

double add_down(double a, double b) {
  double s = checked(a + b);
  return two_sum_err(a, b, s) < 0.0 ? down(s) : s;
}
double add_up(double a, double b) {
  double s = checked(a + b);
  return two_sum_err(a, b, s) > 0.0 ? up(s) : s;
}
double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  double p = checked(a * b);
  if (p != 0.0 && std::abs(p) < kTiny) return down(p);
  if (p == 0.0 && a != 0.0 && b != 0.0) return down(p);
  return std::fma(a, b, -p) < 0.0 ? down(p) : p;
}
double mul_up(double a, double b) {
  double p = checked(a * b);
  if (p != 0.0 && std::abs(p) < kTiny) return up(p);
  if (p == 0.0 && a != 0.0 && b != 0.0) return up(p);
  return std::fma(a, b, -p) > 0.0 ? up(p) : p;
}

namespace {
// Sign of (a/b - q) for q = fl(a/b).
int div_err_sign(double a, double b, double q) {
  double r = std::fma(-q, b, a);
  if (r == 0.0) return 0;
  return ((r > 0.0) == (b > 0.0)) ? 1 : -1;
}
}  // namespace

double div_down(double a, double b) {
  double q = checked(a / b);
  if ((q != 0.0 && std::abs(q) < kTiny) || (q == 0.0 && a != 0.0)) return down(q);
  return div_err_sign(a, b, q) < 0 ? down(q) : q;
}
double div_up(double a, double b) {
  double q = checked(a / b);
  if ((q != 0.0 && std::abs(q) < kTiny) || (q == 0.0 && a != 0.0)) return up(q);
  return div_err_sign(a, b, q) > 0 ? up(q) : q;
}

double sqrt_down(double a) {
  double r = std::sqrt(a);
  if (r != 0.0 && r < kTiny) return std::max(0.0, down(r));
  return std::fma(-r, r, a) < 0.0 ? std::max(0.0, down(r)) : r;
}
double sqrt_up(double a) {
  double r = checked(std::sqrt(a));
  if (r != 0.0 && r < kTiny) return up(r);
  return std::fma(-r, r, a) > 0.0 ? up(r) : r;
}

// No error-free transform for cbrt; step outward until the cube brackets a.
double cbrt_down(double a) {
  double r = checked(std::cbrt(a));
  while (r > -kInf && pow_odd_up(r) > a) r = down(r);
  // std::cbrt is not correctly rounded; move back up while still valid.
  while (r < kInf && pow_odd_up(up(r)) <= a) r = up(r);
  return r;
}
double cbrt_up(double a) {
  double r = checked(std::cbrt(a));
  while (r < kInf && pow_odd_down(r) < a) r = up(r);
  while (r > -kInf && pow_odd_down(down(r)) >= a) r = down(r);
  return r;
}

}  // namespace rounding

Interval::Interval(double x) : lo_(x), hi_(x) {
  if (!std::isfinite(x)) throw OverflowError("interval endpoint not finite");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw OverflowError("interval endpoint not finite");
  if (lo > hi) throw DomainError("interval with lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval::raw(rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_));
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval::raw(rounding::sub_down(a.lo_, b.hi_), rounding::sub_up(a.hi_, b.lo_));
}

Interval operator*(const Interval& a, const Interval& b) {
  using rounding::mul_down;
  using rounding::mul_up;
  const double lo = std::min({mul_down(a.lo_, b.lo_), mul_down(a.lo_, b.hi_), mul_down(a.hi_, b.lo_),
                              mul_down(a.hi_, b.hi_)});
  const double hi = std::max(
      {mul_up(a.lo_, b.lo_), mul_up(a.lo_, b.hi_), mul_up(a.hi_, b.lo_), mul_up(a.hi_, b.hi_)});
  return Interval::raw(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
  using rounding::div_down;
  using rounding::div_up;
  const double lo = std::min({div_down(a.lo_, b.lo_), div_down(a.lo_, b.hi_), div_down(a.hi_, b.lo_),
                              div_down(a.hi_, b.hi_)});
  const double hi = std::max(
      {div_up(a.lo_, b.lo_), div_up(a.lo_, b.hi_), div_up(a.hi_, b.lo_), div_up(a.hi_, b.hi_)});
  return Interval::raw(lo, hi);
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  return raw(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
}

Interval sqrt(const Interval& a) {
  if (a.lo_ < 0.0) throw DomainError("interval sqrt of negative values");
  return Interval::raw(rounding::sqrt_down(a.lo_), rounding::sqrt_up(a.hi_));
}

Interval cbrt(const Interval& a) { return Interval::raw(rounding::cbrt_down(a.lo()), rounding::cbrt_up(a.hi())); }

namespace {
// x^n for x >= 0 with the given rounding direction.
double pow_nonneg(double x, int n, bool upward) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r = upward ? rounding::mul_up(r, x) : rounding::mul_down(r, x);
  return r;
}
}  // namespace

Interval pow(const Interval& a, int n) {
  if (n < 0) throw DomainError("interval pow with negative exponent");
  if (n == 0) return Interval(1.0);
  if (a.lo_ >= 0.0) return Interval::raw(pow_nonneg(a.lo_, n, false), pow_nonneg(a.hi_, n, true));
  if (a.hi_ <= 0.0) {
    double lo = pow_nonneg(-a.hi_, n, false);
    double hi = pow_nonneg(-a.lo_, n, true);
    return n % 2 == 0 ? Interval::raw(lo, hi) : Interval::raw(-hi, -lo);
  }
  if (n % 2 == 0) return Interval::raw(0.0, pow_nonneg(std::max(-a.lo_, a.hi_), n, true));
  return Interval::raw(-pow_nonneg(-a.lo_, n, true), pow_nonneg(a.hi_, n, true));
}

Interval sqr(const Interval& a) { return pow(a, 2); }

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

Interval pi_interval() {
  constexpr double kPiBelow = 3.141592653589793115997963468544185161590576171875;
  return Interval(kPiBelow, std::nextafter(kPiBelow, 4.0));
}

Interval decimal_interval(double x) {
  if (!std::isfinite(x)) throw OverflowError("decimal_interval: not finite");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  std::string_view text(buf, res.ptr - buf);
  // mantissa digits d.ddd and exponent; exact iff 5^k divides the digits,
  // where k is the number of fractional decimal places.
  const auto epos = text.find('e');
  std::string digits;
  for (char c : text.substr(0, epos)) {
    if (c >= '0' && c <= '9') digits.push_back(c);
  }
  const int exponent = std::stoi(std::string(text.substr(epos + 1)));
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  const int places = static_cast<int>(digits.size()) - 1 - exponent;
  if (places <= 0) return Interval(x);
  unsigned long long d = std::stoull(digits);
  for (int k = 0; k < places; ++k) {
    if (d % 5 != 0) return Interval(std::nextafter(x, -INFINITY), std::nextafter(x, INFINITY));
    d /= 5;
  }
  return Interval(x);
}

double Box5::measure() const {
  double m = 1.0;
  for (const Interval& c : v) m *= c.width();
  return m;
}

std::array<double, Box5::kDim> Box5::midpoint() const {
  std::array<double, kDim> m{};
  for (int i = 0; i < kDim; ++i) m[i] = v[i].mid();
  return m;
}

bool Box5::contains(const std::array<double, kDim>& p) const {
  for (int i = 0; i < kDim; ++i) {
    if (!v[i].contains(p[i])) return false;
  }
  return true;
}

bool Box5::contains(const Box5& o) const {
  for (int i = 0; i < kDim; ++i) {
    if (!v[i].contains(o.v[i])) return false;
  }
  return true;
}

Interval eval_S(const Box5& b) { return formulas::surface(b.x1(), b.x2(), b.x3(), b.y1(), b.y2()); }

Interval eval_V(const Box5& b) {
  return Interval(2.0) * formulas::base_area(b.x1(), b.x2(), b.x3(), b.y1(), b.y2()) / Interval(3.0);
}

Interval eval_G(const Box5& b, double ratio) {
  return formulas::gap(b.x1(), b.x2(), b.x3(), b.y1(), b.y2(), formulas::volume_factor<Interval>(ratio));
}

}  // namespace polyiso
