#pragma once

// Template definitions for certify.hpp.

namespace polyiso {

template <class T>
T Constraint::value(const T& x1, const T& x2, const T& x3, const T& y1, const T& y2) const {
  switch (kind) {
    case ConstraintKind::X1LeX2:
      return x2 - x1;
    case ConstraintKind::X2LeX3:
      return x3 - x2;
    case ConstraintKind::ConvexFirst:
      return x2 * y1 - x1 * y2;
    case ConstraintKind::ConvexSecond:
      return (x3 - x1) * y2 - (x3 - x2) * y1;
    case ConstraintKind::AreaMin:
      return x2 * y1 + (x3 - x1) * y2 - T(bound);
    case ConstraintKind::X3Max:
      return T(bound) - x3;
    case ConstraintKind::Y1Max:
      return T(bound) - y1;
    case ConstraintKind::Y2Max:
      return T(bound) - y2;
  }
  return T(0.0);
}

}  // namespace polyiso
