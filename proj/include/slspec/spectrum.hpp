// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "slspec/coefficients.hpp"
#include "slspec/propagator.hpp"

namespace slspec {

struct EigenRecord {
  cplx lambda;
  /// Interior zeros of the eigenfunction in (a, b); real eigenvalues only (−1 otherwise).
  int zeros_in_ab = -1;
  /// ∫ w |y|² of the α-normalized eigenfunction; real eigenvalues only (NaN otherwise).
  double weighted_norm = 0.0;
  /// |D(λ)|.
  double residual = 0.0;
  /// Touching zero of D (two coalesced real eigenvalues).
  bool double_root = false;
};

struct Window {
  double lo;
  double hi;
};

struct ScanResult {
  Window window{};
  std::vector<EigenRecord> records;  // sorted by real part
  std::optional<int> n_R_empirical;
  /// Lower-confidence annotation: a finite window cannot prove "precisely two" for all larger counts.
  std::optional<int> n_H_empirical;
  std::vector<std::string> warnings;
};

struct ScanOptions {
  double tol = 1e-9;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
  /// Initial grid spacing multiplier (1 = default policy); used to check grid invariance.
  double grid_factor = 1.0;
  PropagateOptions propagate{};
};

/// D(λ) = y(b, λ) cos β + y'(b, λ) sin β for the α-normalized solution. Entire in λ.
[[nodiscard]] cplx characteristic(const ProblemSpec& spec, cplx lambda, const PropagateOptions& opts = {});

struct ZeroCount {
  int count = 0;
  /// A zero sat within 1e-13 of an interior breakpoint; counted once.
  bool breakpoint_zero = false;
};

/// Interior zeros of y(·, λ) in (a, b) for real λ; endpoint zeros are excluded.
[[nodiscard]] ZeroCount count_zeros(const ProblemSpec& spec, double lambda, const PropagateOptions& opts = {});

/// All real eigenvalues in the window, each bracketed to width < tol·max(1, |λ|).
[[nodiscard]] ScanResult find_real_eigenvalues(const ProblemSpec& spec, Window window,
                                               const ScanOptions& opts = {});

struct Rect {
  Window re;
  Window im;
};

/// Winding number of D around the boundary of the rectangle, by adaptive argument tracking.
/// Throws NumericalFailure when the argument cannot be resolved.
[[nodiscard]] int winding_number(const ProblemSpec& spec, const Rect& rect, const PropagateOptions& opts = {});

/// Zeros of D inside the rectangle. The part above the real axis is searched by the argument
/// principle with recursive subdivision and Newton polish; when the rectangle straddles the real
/// axis, the real eigenvalues come from the real scan and the lower half is the mirror image.
[[nodiscard]] std::vector<EigenRecord> find_complex_eigenvalues(const ProblemSpec& spec, const Rect& rect,
                                                                const ScanOptions& opts = {});

/// Empirical Richardson index from oscillation counts; none when the window is inconclusive.
[[nodiscard]] std::optional<int> empirical_richardson_index(const std::vector<EigenRecord>& records);
[[nodiscard]] std::optional<int> empirical_haupt_index(const std::vector<EigenRecord>& records);

}  // namespace slspec
