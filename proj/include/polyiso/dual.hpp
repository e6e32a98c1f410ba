#pragma once

#include <algorithm>
#include <array>

#include "polyiso/interval.hpp"

namespace polyiso {

/// Forward-mode derivative enclosure: an interval value together with
/// interval enclosures of its N partial derivatives over the same box.
/// `bounded` turns false once a derivative is unbounded on the box (sqrt at
/// zero); the value enclosure stays valid either way.
template <int N>
struct Dual {
  Interval v;
  std::array<Interval, N> d{};
  bool bounded = true;

  Dual() = default;
  Dual(double c) : v(c) {}  // NOLINT(google-explicit-constructor)
  Dual(const Interval& c) : v(c) {}  // NOLINT(google-explicit-constructor)

  static Dual variable(const Interval& x, int i) {
    Dual r(x);
    r.d[i] = Interval(1.0);
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v + b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    r.bounded = a.bounded && b.bounded;
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.v - b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    r.bounded = a.bounded && b.bounded;
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v * b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    r.bounded = a.bounded && b.bounded;
    return r;
  }
  friend Dual operator*(const Interval& k, const Dual& a) {
    Dual r(k * a.v);
    for (int i = 0; i < N; ++i) r.d[i] = k * a.d[i];
    r.bounded = a.bounded;
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual r(a.v / b.v);
    for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
    r.bounded = a.bounded && b.bounded;
    return r;
  }
  friend Dual sqr(const Dual& a) {
    Dual r(sqr(a.v));
    const Interval twice = Interval(2.0) * a.v;
    for (int i = 0; i < N; ++i) r.d[i] = twice * a.d[i];
    r.bounded = a.bounded;
    return r;
  }
  friend Dual cube(const Dual& a) {
    Dual r(pow(a.v, 3));
    const Interval slope = Interval(3.0) * sqr(a.v);
    for (int i = 0; i < N; ++i) r.d[i] = slope * a.d[i];
    r.bounded = a.bounded;
    return r;
  }
  friend Dual sqrt(const Dual& a) {
    Dual r(sqrt(a.v));
    if (!(r.v.lo() > 0.0)) {
      r.bounded = false;
      return r;
    }
    const Interval twice = Interval(2.0) * r.v;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / twice;
    r.bounded = a.bounded;
    return r;
  }
  /// sqrt(a^2 + b^2 + c^2). The derivative is u . (a', b', c') with u the
  /// unit vector (a, b, c)/r, which stays in [-1, 1] even where r vanishes;
  /// this is a generalized gradient, so mean-value bounds remain valid.
  friend Dual norm3(const Dual& a, const Dual& b, const Dual& c) {
    Dual r(sqrt(sqr(a.v) + sqr(b.v) + sqr(c.v)));
    const Dual* parts[3] = {&a, &b, &c};
    std::array<Interval, 3> u;
    for (int j = 0; j < 3; ++j) {
      const Interval& x = parts[j]->v;
      double lo = x.lo() >= 0.0 ? 0.0 : -1.0;
      double hi = x.hi() <= 0.0 ? 0.0 : 1.0;
      if (r.v.lo() > 0.0) {
        const Interval q = x / r.v;
        lo = std::max(lo, q.lo());
        hi = std::min(hi, q.hi());
      }
      u[j] = Interval(lo, hi);
    }
    for (int i = 0; i < N; ++i) r.d[i] = u[0] * a.d[i] + u[1] * b.d[i] + u[2] * c.d[i];
    r.bounded = a.bounded && b.bounded && c.bounded;
    return r;
  }
  friend Dual cbrt(const Dual& a) {
    Dual r(cbrt(a.v));
    if (r.v.contains_zero()) {
      r.bounded = false;
      return r;
    }
    const Interval slope = Interval(3.0) * sqr(r.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / slope;
    r.bounded = a.bounded;
    return r;
  }
};

/// Mean-value enclosure f(c) + sum_i df_i(B) (x_i - c_i) over the box `dom`,
/// given the derivative enclosure `over` on the box and the point value
/// `at_center` at c.
template <int N, std::size_t M>
Interval mean_value_form(const Dual<N>& over, const Interval& at_center, const std::array<Interval, M>& dom,
                         const std::array<double, M>& center) {
  static_assert(N == M);
  Interval r = at_center;
  for (int i = 0; i < N; ++i) r += over.d[i] * (dom[i] - Interval(center[i]));
  return r;
}

}  // namespace polyiso
