// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace slspec::entire {

// Entire functions of z = k² that build the solution operator of y'' + z y = 0 over a length T:
//   cosine(z, T) = cos(√z T)              sine(z, T) = sin(√z T)/√z
//   gram_s(z, T) = (T − sine(z, T))/z     gram_c(z, T) = (1 − cosine(z, T))/z
// Each is even in √z, so the branch of the square root never matters. Near z = 0 the
// power series in u = −zT² is used to avoid the removable singularity.

template <class T>
inline constexpr bool is_complex_v = !std::is_floating_point_v<T>;

namespace detail {

// Σ_{n≥0} u^n / (2n + offset)!
template <class S>
S series(S u, int offset) {
  double fact = 1.0;
  for (int i = 2; i <= offset; ++i) fact *= i;
  S term = S(1.0 / fact);
  S sum = term;
  for (int n = 1; n < 60; ++n) {
    term *= u / double((2 * n + offset - 1) * (2 * n + offset));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

template <class S>
void trig(S z, double t, S& c, S& s) {
  if constexpr (is_complex_v<S>) {
    const S k = std::sqrt(z);
    c = std::cos(k * t);
    s = std::sin(k * t) / k;
  } else {
    if (z > 0.0) {
      const double k = std::sqrt(z);
      c = std::cos(k * t);
      s = std::sin(k * t) / k;
    } else {
      const double k = std::sqrt(-z);
      c = std::cosh(k * t);
      s = std::sinh(k * t) / k;
    }
  }
}

}  // namespace detail

inline constexpr double kTransferSeriesThreshold = 1e-4;
inline constexpr double kGramSeriesThreshold = 1.0;

template <class S>
S cosine(S z, double t) {
  const S u = -z * (t * t);
  if (std::abs(u) < kTransferSeriesThreshold) return detail::series(u, 0);
  S c, s;
  detail::trig(z, t, c, s);
  return c;
}

template <class S>
S sine(S z, double t) {
  const S u = -z * (t * t);
  if (std::abs(u) < kTransferSeriesThreshold) return t * detail::series(u, 1);
  S c, s;
  detail::trig(z, t, c, s);
  return s;
}

template <class S>
S gram_s(S z, double t) {
  const S u = -z * (t * t);
  if (std::abs(u) < kGramSeriesThreshold) return (t * t * t) * detail::series(u, 3);
  S c, s;
  detail::trig(z, t, c, s);
  return (t - s) / z;
}

template <class S>
S gram_c(S z, double t) {
  const S u = -z * (t * t);
  if (std::abs(u) < kGramSeriesThreshold) return (t * t) * detail::series(u, 2);
  S c, s;
  detail::trig(z, t, c, s);
  return (1.0 - c) / z;
}

/// ∫_0^L (y0 C + y0' S)² dt for y'' + z y = 0, with C, S the fundamental pair above.
inline double square_integral(double z, double len, double y0, double yp0) {
  if (z < 0.0 && -z * len * len >= kGramSeriesThreshold) {
    // y = P e^{κt} + Q e^{−κt}; avoids cancellation for the decaying mode
    const double k = std::sqrt(-z);
    const double p = 0.5 * (y0 + yp0 / k);
    const double q = 0.5 * (y0 - yp0 / k);
    return p * p * std::expm1(2.0 * k * len) / (2.0 * k) + 2.0 * p * q * len -
           q * q * std::expm1(-2.0 * k * len) / (2.0 * k);
  }
  const double s2 = sine(z, 2.0 * len);
  const double int_cc = 0.5 * len + 0.25 * s2;
  const double int_ss = 0.25 * gram_s(z, 2.0 * len);
  const double int_cs = 0.25 * gram_c(z, 2.0 * len);
  return y0 * y0 * int_cc + 2.0 * y0 * yp0 * int_cs + yp0 * yp0 * int_ss;
}

}  // namespace slspec::entire
