// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "slspec/coefficients.hpp"

namespace slspec {

using cplx = std::complex<double>;

/// (y, y') at location x.
struct StateVector {
  cplx y;
  cplx yp;
  double x = 0.0;
};

/// Solution operator of y'' + (λ w + q) y = 0 from x0 to x1 acting on (y, y').
/// Wronskian conservation makes the determinant 1.
struct TransferMatrix {
  cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};
  double x0 = 0.0;
  double x1 = 0.0;

  [[nodiscard]] cplx det() const { return m11 * m22 - m12 * m21; }
  [[nodiscard]] StateVector apply(const StateVector& s) const {
    return {m11 * s.y + m12 * s.yp, m21 * s.y + m22 * s.yp, x1};
  }
};

/// Composition: `later * earlier` maps across earlier.x0 → later.x1.
[[nodiscard]] TransferMatrix operator*(const TransferMatrix& later, const TransferMatrix& earlier);

struct PropagateOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  /// Route constant-q pieces through the Runge–Kutta integrator as well.
  bool force_adaptive = false;
  long max_steps = 2'000'000;
};

/// Exact solution operator of y'' + k2 y = 0 over a piece of the given length.
[[nodiscard]] TransferMatrix piece_transfer(cplx k2, double length);

struct Propagation {
  StateVector terminal;
  TransferMatrix matrix;
};

/// Initial state realizing the α condition: y(a) = sin α, y'(a) = cos α.
[[nodiscard]] StateVector initial_state(const ProblemSpec& spec);

/// Propagates the α-normalized solution from a to b. Entire in λ.
[[nodiscard]] Propagation propagate(const ProblemSpec& spec, cplx lambda, const PropagateOptions& opts = {});

/// Transfer matrix over [x0, x1] ⊆ [a, b].
[[nodiscard]] TransferMatrix transfer_between(const ProblemSpec& spec, cplx lambda, double x0, double x1,
                                              const PropagateOptions& opts = {});

/// Dense output: the α-normalized solution at each of the sorted points xs ⊆ [a, b].
[[nodiscard]] std::vector<StateVector> solution_at(const ProblemSpec& spec, cplx lambda, std::span<const double> xs,
                                                   const PropagateOptions& opts = {});

/// Advances a state from s.x to x_to (x_to ≥ s.x, both inside [a, b]).
[[nodiscard]] StateVector advance(const ProblemSpec& spec, cplx lambda, const StateVector& s, double x_to,
                                  const PropagateOptions& opts = {});

/// Real-λ sweep in real arithmetic, with exact interior-zero bookkeeping and ∫ w y².
struct RealSweep {
  double y = 0.0;
  double yp = 0.0;
  /// Zeros of y in (a, b], counted exactly (per-piece Prüfer phase on constant pieces,
  /// sign changes on integrator steps short enough to hold at most one zero).
  int zeros = 0;
  /// Continuous Prüfer angle θ = atan2(y, y') at b, with θ(a) = α.
  double theta = 0.0;
  double weighted_norm = 0.0;
  /// A zero fell within 1e-13 (relative) of an interior breakpoint.
  bool breakpoint_zero = false;
};

struct SweepOptions {
  PropagateOptions propagate{};
  bool with_norm = true;
};

[[nodiscard]] RealSweep sweep_real(const ProblemSpec& spec, double lambda, const SweepOptions& opts = {});

/// Sweep over a sub-interval [x0, x1] of [a, b] starting from the given real state (y, y') at x0,
/// with coefficients extended constantly outside [a, b].
[[nodiscard]] RealSweep sweep_real_from(const PiecewiseCoefficient& coeff, double lambda, double x0, double x1,
                                        double y0, double yp0, const SweepOptions& opts = {});

/// Interior zeros (a, b) of the real solution at real λ, each located by bracketing to ~1e-14.
[[nodiscard]] std::vector<double> solution_zeros(const ProblemSpec& spec, double lambda,
                                                 const PropagateOptions& opts = {});

}  // namespace slspec
