// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "slspec/spectrum.hpp"

namespace slspec {

/// ∫_a^b w y² dx for the α-normalized real solution at real λ. Exact antiderivatives on
/// constant pieces; the adaptive integrator carries the integral on sampled pieces.
[[nodiscard]] double weighted_norm(const ProblemSpec& spec, double lambda, const PropagateOptions& opts = {});

struct TailEvidence {
  /// Largest / smallest eigenvalue examined.
  double lambda_hi_checked = 0.0;
  double lambda_lo_checked = 0.0;
  /// Every scanned eigenvalue above this has positive weighted norm (below: negative).
  double all_positive_above = 0.0;
  double all_negative_below = 0.0;
  /// Positive norms at the 3 eigenvalues nearest the window top (negative at the bottom).
  bool sturmian_top = false;
  bool sturmian_bottom = false;
  /// Length of the run of positive norms ending at the top (negative norms starting at the bottom).
  /// λ⁺ (λ⁻) is reported only when this run is nonempty.
  int positive_run_top = 0;
  int negative_run_bottom = 0;
};

/// Scan-based Richardson numbers. Only real eigenvalues enter: λ⁺ is the smallest scanned
/// eigenvalue above which every scanned eigenvalue has positive weighted norm, which is the
/// largest eigenvalue with nonpositive norm, or the lowest eigenvalue when there is none.
/// λ⁻ mirrors this with negative norms.
struct RichardsonReport {
  std::optional<double> lambda_plus;
  std::optional<double> lambda_minus;
  ScanResult scan;
  TailEvidence tail;
};

/// Throws InvalidInput when the window holds no real eigenvalue.
[[nodiscard]] RichardsonReport richardson_numbers(const ProblemSpec& spec, Window window, const ScanOptions& opts = {});

/// Same, from an existing scan.
[[nodiscard]] RichardsonReport richardson_from_scan(ScanResult scan);

struct DriftResult {
  /// Location of the selected interior zero at λ.
  double zero = 0.0;
  /// Central finite difference (x(λ + h) − x(λ − h)) / 2h.
  double finite_difference = 0.0;
  /// Implicit-function value −∫_a^{x} w y² dx / y'(x)².
  double formula = 0.0;
  double step = 0.0;
};

/// dx/dλ of the zero_index-th interior zero (1-based) of the α-normalized solution.
/// Throws InvalidInput when the zero does not exist, meets a breakpoint, or leaves (a, b)
/// under the perturbation.
[[nodiscard]] DriftResult zero_drift(const ProblemSpec& spec, double lambda, int zero_index,
                                     const PropagateOptions& opts = {});

}  // namespace slspec
