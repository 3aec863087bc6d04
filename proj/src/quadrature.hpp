#pragma once

#include <array>

namespace dfield::detail {

// Three-point Gauss–Legendre rule on [0,1]; exact for polynomials of degree five.
inline constexpr std::array<double, 3> kGaussNodes{0.1127016653792583, 0.5, 0.8872983346207417};
inline constexpr std::array<double, 3> kGaussWeights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// Mean of f over [a,b].
template <class Fn>
double segment_mean(Fn&& f, double a, double b) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += kGaussWeights[i] * f(a + (b - a) * kGaussNodes[i]);
  return sum;
}

}  // namespace dfield::detail
