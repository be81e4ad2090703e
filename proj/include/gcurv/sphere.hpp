#pragma once

// Unit-sphere volumes and even monomial moments.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

namespace gcurv {

// Volume of the unit d-sphere S^d in R^{d+1}; omega_0 = 2.
inline double sphere_volume(int d) {
  if (d < 0) throw std::invalid_argument("sphere_volume: negative dimension");
  const double h = 0.5 * (d + 1);
  return 2.0 * std::exp(h * std::log(std::numbers::pi) - std::lgamma(h));
}

// Integral over S^{n-1} of nu_1^{2 a_1} ... nu_n^{2 a_n}, n = a.size():
//   2 prod Gamma(a_i + 1/2) / Gamma(n/2 + sum a_i).
// With sum a_i = m/2 and k = m + n the denominator is Gamma(k/2).
// Odd exponents integrate to zero; callers exclude them.
inline double sphere_moment(std::span<const int> a) {
  if (a.empty()) throw std::invalid_argument("sphere_moment: empty exponent vector");
  double log_num = 0.0;
  int total = 0;
  for (int ai : a) {
    if (ai < 0) throw std::invalid_argument("sphere_moment: negative exponent");
    log_num += std::lgamma(ai + 0.5);
    total += ai;
  }
  const double log_den = std::lgamma(0.5 * static_cast<double>(a.size()) + total);
  return 2.0 * std::exp(log_num - log_den);
}

}  // namespace gcurv
