// SPDX-License-Identifier: Apache-2.0
#include "slspec/richardson.hpp"

#include <algorithm>
#include <cmath>

#include "slspec/errors.hpp"

namespace slspec {

double weighted_norm(const ProblemSpec& spec, double lambda, const PropagateOptions& opts) {
  return sweep_real(spec, lambda, {opts, true}).weighted_norm;
}

RichardsonReport richardson_from_scan(ScanResult scan) {
  std::vector<const EigenRecord*> real;
  for (const EigenRecord& r : scan.records) {
    if (r.lambda.imag() == 0.0) real.push_back(&r);
  }
  if (real.empty()) throw InvalidInput("no real eigenvalues in the scan window");

  RichardsonReport rep;
  TailEvidence& tail = rep.tail;
  tail.lambda_lo_checked = real.front()->lambda.real();
  tail.lambda_hi_checked = real.back()->lambda.real();

  const EigenRecord* last_nonpositive = nullptr;
  for (const EigenRecord* r : real) {
    if (r->weighted_norm <= 0.0) last_nonpositive = r;
  }
  const EigenRecord* first_nonnegative = nullptr;
  for (auto it = real.rbegin(); it != real.rend(); ++it) {
    if ((*it)->weighted_norm >= 0.0) first_nonnegative = *it;
  }
  tail.all_positive_above = (last_nonpositive ? last_nonpositive : real.front())->lambda.real();
  tail.all_negative_below = (first_nonnegative ? first_nonnegative : real.back())->lambda.real();

  for (auto it = real.rbegin(); it != real.rend() && (*it)->weighted_norm > 0.0; ++it) ++tail.positive_run_top;
  for (auto it = real.begin(); it != real.end() && (*it)->weighted_norm < 0.0; ++it) ++tail.negative_run_bottom;
  tail.sturmian_top = tail.positive_run_top >= 3;
  tail.sturmian_bottom = tail.negative_run_bottom >= 3;
  // a nonpositive norm at the window top says nothing about larger eigenvalues
  if (tail.positive_run_top > 0) rep.lambda_plus = tail.all_positive_above;
  if (tail.negative_run_bottom > 0) rep.lambda_minus = tail.all_negative_below;
  rep.scan = std::move(scan);
  return rep;
}

RichardsonReport richardson_numbers(const ProblemSpec& spec, Window window, const ScanOptions& opts) {
  return richardson_from_scan(find_real_eigenvalues(spec, window, opts));
}

namespace {

double nth_zero(const ProblemSpec& spec, double lambda, int index, const PropagateOptions& opts) {
  const std::vector<double> zs = solution_zeros(spec, lambda, opts);
  if (index < 1 || static_cast<std::size_t>(index) > zs.size()) {
    throw InvalidInput("zero_drift: solution has no interior zero number " + std::to_string(index) + " at lambda = " +
                       std::to_string(lambda));
  }
  return zs[static_cast<std::size_t>(index - 1)];
}

double breakpoint_distance(const ProblemSpec& spec, double x) {
  double d = std::min(x - spec.a(), spec.b() - x);
  for (const Piece& p : spec.coeff().pieces()) d = std::min(d, std::abs(x - p.x0));
  return d;
}

}  // namespace

DriftResult zero_drift(const ProblemSpec& spec, double lambda, int zero_index, const PropagateOptions& opts) {
  DriftResult out;
  out.step = 1e-5 * std::max(1.0, std::abs(lambda));
  out.zero = nth_zero(spec, lambda, zero_index, opts);
  const double xm = nth_zero(spec, lambda - out.step, zero_index, opts);
  const double xp = nth_zero(spec, lambda + out.step, zero_index, opts);

  const double guard = 1e-9 * (spec.b() - spec.a());
  const double lo = std::min({xm, xp, out.zero});
  const double hi = std::max({xm, xp, out.zero});
  for (const Piece& p : spec.coeff().pieces()) {
    if (p.x0 > spec.a() && p.x0 >= lo - guard && p.x0 <= hi + guard) {
      throw InvalidInput("zero_drift: zero meets the breakpoint at x = " + std::to_string(p.x0));
    }
  }
  if (breakpoint_distance(spec, lo) < guard || breakpoint_distance(spec, hi) < guard) {
    throw InvalidInput("zero_drift: zero leaves (a, b) under perturbation");
  }
  out.finite_difference = (xp - xm) / (2.0 * out.step);

  const StateVector s0 = initial_state(spec);
  const RealSweep up_to =
      sweep_real_from(spec.coeff(), lambda, spec.a(), out.zero, s0.y.real(), s0.yp.real(), {opts, true});
  out.formula = -up_to.weighted_norm / (up_to.yp * up_to.yp);
  return out;
}

}  // namespace slspec
