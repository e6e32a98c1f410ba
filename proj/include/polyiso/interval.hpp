#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <string_view>

namespace polyiso {

/// Closed real interval [lo, hi] with finite endpoints.
///
/// Every primitive rounds outward exactly as IEEE directed rounding would:
/// the round-to-nearest result is computed, its rounding error is recovered
/// with an error-free transformation (TwoSum, FMA residual), and the endpoint
/// is moved one ulp only when the error points inward. No floating-point
/// environment state is touched, so concurrent callers need no coordination.
/// Results that would be infinite throw OverflowError.
class Interval {
 public:
  constexpr Interval() = default;
  /// Point interval. Throws OverflowError if x is not finite.
  Interval(double x);  // NOLINT(google-explicit-constructor)
  /// Throws DomainError if lo > hi, OverflowError if not finite.
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws DomainError when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a) { return Interval::raw(-a.hi_, -a.lo_); }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  friend bool operator==(const Interval&, const Interval&) = default;

  /// Smallest interval containing both.
  static Interval hull(const Interval& a, const Interval& b);

 private:
  static Interval raw(double lo, double hi) {
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }
  friend Interval sqrt(const Interval& a);
  friend Interval cbrt(const Interval& a);
  friend Interval sqr(const Interval& a);
  friend Interval pow(const Interval& a, int n);

  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Throws DomainError if a.lo() < 0.
Interval sqrt(const Interval& a);
/// Real cube root.
Interval cbrt(const Interval& a);
/// Image of x^2 (tighter than a*a when a straddles zero).
Interval sqr(const Interval& a);
/// Image of x^n for n >= 0; even powers reflect through zero.
Interval pow(const Interval& a, int n);

std::ostream& operator<<(std::ostream& os, const Interval& x);

/// Enclosure of the decimal number whose shortest round-trip representation
/// is x: the point x when that decimal is exactly representable (6.5, 188),
/// otherwise x widened by one ulp on each side (0.411, 3.44).
Interval decimal_interval(double x);

/// Enclosure of pi: the two doubles adjacent to it.
Interval pi_interval();

/// Name of the rounding strategy, recorded in certificates.
constexpr std::string_view kRoundingStrategy = "eft-directed";

namespace rounding {
/// a + b rounded toward -inf / +inf.
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
double cbrt_down(double a);
double cbrt_up(double a);
}  // namespace rounding

/// Five-dimensional box of strange-polytope parameters.
struct Box5 {
  static constexpr int kDim = 5;
  enum Axis { X1 = 0, X2, X3, Y1, Y2 };

  std::array<Interval, kDim> v;

  const Interval& operator[](int i) const { return v[i]; }
  Interval& operator[](int i) { return v[i]; }
  const Interval& x1() const { return v[X1]; }
  const Interval& x2() const { return v[X2]; }
  const Interval& x3() const { return v[X3]; }
  const Interval& y1() const { return v[Y1]; }
  const Interval& y2() const { return v[Y2]; }

  double measure() const;
  std::array<double, kDim> midpoint() const;
  bool contains(const std::array<double, kDim>& p) const;
  bool contains(const Box5& o) const;
  friend bool operator==(const Box5&, const Box5&) = default;
};

/// Natural interval extensions of the closed forms for S, V and
/// G = S^3 - ratio * V^2 (ratio defaults to 188).
Interval eval_S(const Box5& b);
Interval eval_V(const Box5& b);
Interval eval_G(const Box5& b, double ratio = 188.0);

}  // namespace polyiso
