// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dormand–Prince 5(4) embedded pair with step rejection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "slspec/errors.hpp"
#include "slspec/propagator.hpp"

namespace slspec::detail {

template <class S, std::size_t N>
using Vec = std::array<S, N>;

template <class S, std::size_t N>
Vec<S, N> axpy(const Vec<S, N>& y, double h, std::initializer_list<std::pair<double, const Vec<S, N>*>> terms) {
  Vec<S, N> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += (h * c) * (*k)[i];
  }
  return out;
}

/// Integrates y' = f(x, y) from x0 to x1 with steps no longer than hmax; calls
/// on_step(x_prev, y_prev, x_new, y_new) after every accepted step.
template <class S, std::size_t N, class Rhs, class Observer>
Vec<S, N> dopri_integrate(Rhs&& f, Vec<S, N> y, double x0, double x1, double hmax, const PropagateOptions& opts,
                          Observer&& on_step) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = x1 - x0;
  if (span <= 0.0) return y;
  hmax = std::min(hmax, span);
  double h = std::min(hmax, std::max(span * 1e-3, 1e-6));
  double x = x0;
  long steps = 0;
  Vec<S, N> k1 = f(x, y);
  // running magnitude per component, so a solution passing through zero is not held to an absolute 1e-13
  std::array<double, N> mag{};
  for (std::size_t i = 0; i < N; ++i) mag[i] = std::abs(y[i]);

  while (x < x1) {
    if (++steps > opts.max_steps) {
      throw NumericalFailure("adaptive integrator exceeded " + std::to_string(opts.max_steps) + " steps near x = " +
                             std::to_string(x));
    }
    bool last = false;
    if (x + h >= x1 || (x1 - (x + h)) < 1e-12 * span) {
      h = x1 - x;
      last = true;
    }
    const Vec<S, N> k2 = f(x + c2 * h, axpy<S, N>(y, h, {{a21, &k1}}));
    const Vec<S, N> k3 = f(x + c3 * h, axpy<S, N>(y, h, {{a31, &k1}, {a32, &k2}}));
    const Vec<S, N> k4 = f(x + c4 * h, axpy<S, N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec<S, N> k5 = f(x + c5 * h, axpy<S, N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec<S, N> k6 =
        f(x + h, axpy<S, N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec<S, N> ynew = axpy<S, N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec<S, N> k7 = f(x + h, ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const S e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = opts.atol + opts.rtol * std::max({mag[i], std::abs(y[i]), std::abs(ynew[i])});
      err = std::max(err, std::abs(e) / scale);
    }

    if (std::isfinite(err) && err <= 1.0) {
      const double xnew = last ? x1 : x + h;
      on_step(x, y, xnew, ynew);
      x = xnew;
      y = ynew;
      k1 = k7;
      for (std::size_t i = 0; i < N; ++i) mag[i] = std::max(mag[i], std::abs(y[i]));
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(hmax, h * grow);
    } else {
      h *= std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.9) : 0.1;
      if (h < 1e-14 * std::max(1.0, std::abs(x))) {
        throw NumericalFailure("integrator tolerance unreachable: step size underflow near x = " + std::to_string(x));
      }
    }
  }
  return y;
}

}  // namespace slspec::detail
