#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "dfield/cochain.hpp"

namespace testing_support {

// max |a - b| over all entries, divided by the largest operand size (at least 1).
inline double relative_gap(const dfield::Cochain& a, const dfield::Cochain& b,
                           std::initializer_list<double> scales = {}) {
  double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  for (double s : scales) scale = std::max(scale, s);
  return (a - b).max_abs() / scale;
}

inline double relative_gap(double a, double b, double scale = 1.0) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b), scale});
}

}  // namespace testing_support
