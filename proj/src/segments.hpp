// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "slspec/coefficients.hpp"

namespace slspec::detail {

/// Stretch of [x0, x1] on which w is constant and q is affine (q0 at x0 to q1 at x1).
struct Segment {
  double x0;
  double x1;
  double w;
  double q0;
  double q1;
  bool affine;  // from a sampled table; integrated adaptively
  bool interior_end;  // x1 is an interior breakpoint of the coefficient

  [[nodiscard]] double length() const { return x1 - x0; }
  [[nodiscard]] double q_at(double x) const {
    if (!affine) return q0;
    return q0 + (q1 - q0) * ((x - x0) / (x1 - x0));
  }
};

/// Splits [lo, hi] at piece breakpoints and sampled-table nodes. Outside [a, b] the
/// coefficients are continued as constants (first/last piece values).
std::vector<Segment> segments(const PiecewiseCoefficient& coeff, double lo, double hi);

}  // namespace slspec::detail
