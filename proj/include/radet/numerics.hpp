#pragma once

/**
 * @file numerics.hpp
 * @brief Small special-function kit for the distribution fitter: standard
 *        normal CDF, digamma/trigamma, and the regularised lower incomplete
 *        gamma function. Standard series / continued-fraction forms, double
 *        precision.
 */

#include <cmath>
#include <stdexcept>

namespace radet {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Digamma via upward recurrence into the asymptotic region. Recurring to
/// x >= 12 keeps the truncated series below ~1e-13 relative error.
inline double digamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("digamma needs x > 0");
  double r = 0.0;
  while (x < 12.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return r + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 -
                 inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0))));
}

/// Trigamma via upward recurrence into the asymptotic region (see digamma).
inline double trigamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("trigamma needs x > 0");
  double r = 0.0;
  while (x < 12.0) {
    r += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return r + inv * (1.0 +
                    inv * (0.5 + inv * (1.0 / 6.0 -
                                        inv2 * (1.0 / 30.0 -
                                                inv2 * (1.0 / 42.0 - inv2 / 30.0)))));
}

/// Regularised lower incomplete gamma P(a, x): series for x < a + 1,
/// Lentz continued fraction for the complement otherwise.
inline double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_p needs a > 0");
  if (x < 0.0) throw std::invalid_argument("gamma_p needs x >= 0");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int k = 0; k < 500; ++k) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

}  // namespace radet
