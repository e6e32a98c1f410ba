#pragma once

#include <cmath>
#include <type_traits>

#include "polyiso/interval.hpp"

/// Closed forms for the strange-polytope family, generic over the scalar
/// (double, Interval, or a gradient-carrying interval type). Base vertices
/// are w1 = (x1, y1), w2 = (x2, y2), w3 = (x3, 0), w4, w5 their mirrors;
/// apices are (0, 0, +-1).
namespace polyiso::formulas {

inline double sqr(double x) { return x * x; }
inline double cube(double x) { return x * x * x; }
inline Interval cube(const Interval& x) { return pow(x, 3); }
inline double norm3(double a, double b, double c) { return std::sqrt(a * a + b * b + c * c); }
inline Interval norm3(const Interval& a, const Interval& b, const Interval& c) {
  return sqrt(sqr(a) + sqr(b) + sqr(c));
}

/// |Q| = x2 y1 - x1 y2 + x3 y2, grouped so that x1 and x3 share one factor.
template <class T>
T base_area(const T& x1, const T& x2, const T& x3, const T& y1, const T& y2) {
  return x2 * y1 + (x3 - x1) * y2;
}

/// Surface area of the double pyramid.
template <class T>
T surface(const T& x1, const T& x2, const T& x3, const T& y1, const T& y2) {
  const T apex_w1 = norm3(x1, y1, T(0.0));
  const T w1_w2 = norm3(x1 - x2, y1 - y2, x2 * y1 - x1 * y2);
  const T w2_w3 = norm3(y2, x3 - x2, x3 * y2);
  return T(2.0) * (apex_w1 + w1_w2 + w2_w3);
}

/// ratio * (2/3)^2, the coefficient of |Q|^2 in ratio * V^2.
template <class K>
K volume_factor(double ratio) {
  if constexpr (std::is_same_v<K, double>) {
    return 4.0 * ratio / 9.0;
  } else {
    return K(4.0) * K(ratio) / K(9.0);
  }
}

/// G = S^3 - ratio * V^2, with the ratio folded into `factor`.
template <class T, class K>
T gap(const T& x1, const T& x2, const T& x3, const T& y1, const T& y2, const K& factor) {
  return cube(surface(x1, x2, x3, y1, y2)) - factor * sqr(base_area(x1, x2, x3, y1, y2));
}

}  // namespace polyiso::formulas
