// SPDX-License-Identifier: Apache-2.0
#include "slspec/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "dopri.hpp"
#include "segments.hpp"
#include "slspec/entire.hpp"
#include "slspec/errors.hpp"

namespace slspec {

namespace detail {

std::vector<Segment> segments(const PiecewiseCoefficient& coeff, double lo, double hi) {
  std::vector<Segment> out;
  const auto pieces = coeff.pieces();
  const double a = coeff.a();
  const double b = coeff.b();
  if (lo < a) {
    const Piece& p = pieces.front();
    const double qa = p.q_at(a);
    out.push_back({lo, std::min(a, hi), p.w, qa, qa, false, true});
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const double x0 = std::max(lo, p.x0);
    const double x1 = std::min(hi, p.x1);
    if (!(x0 < x1)) continue;
    const bool interior = p.x1 < b;
    if (p.constant_q()) {
      const double q = std::get<double>(p.q);
      out.push_back({x0, x1, p.w, q, q, false, x1 == p.x1 && interior});
      continue;
    }
    const auto& t = std::get<SampledTable>(p.q);
    std::vector<double> cuts{x0};
    for (double xn : t.x) {
      if (xn > x0 && xn < x1) cuts.push_back(xn);
    }
    cuts.push_back(x1);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const bool last = k + 2 == cuts.size();
      out.push_back({cuts[k], cuts[k + 1], p.w, t.at(cuts[k]), t.at(cuts[k + 1]), true,
                     last && x1 == p.x1 && interior});
    }
  }
  if (hi > b) {
    const Piece& p = pieces.back();
    const double qb = p.q_at(b);
    if (!out.empty()) out.back().interior_end = true;
    out.push_back({std::max(b, lo), hi, p.w, qb, qb, false, false});
  }
  return out;
}

}  // namespace detail

namespace {

using detail::Segment;
using detail::Vec;

constexpr double kPi = std::numbers::pi;

// atan2(y, y') reduced to [0, π); y = 0 maps to 0 so that a zero at x is counted in (a, x].
double half_angle(double y, double yp) {
  if (y == 0.0) return 0.0;
  double t = std::atan2(y, yp);
  if (t < 0.0) t += kPi;
  // tiny |y| with y' < 0 rounds onto π although the zero has not been reached
  if (t >= kPi) t = std::nextafter(kPi, 0.0);
  return t;
}

double max_k2(const Segment& s, double lambda) {
  return std::max({lambda * s.w + s.q0, lambda * s.w + s.q1, 0.0});
}

double max_abs_k2(const Segment& s, cplx lambda) {
  return std::max(std::abs(lambda * s.w + s.q0), std::abs(lambda * s.w + s.q1));
}

double step_cap(double k2max, double len) { return k2max > 0.0 ? std::min(len, 1.0 / std::sqrt(k2max)) : len; }

template <class S>
auto ode_rhs(const Segment& seg, S lambda) {
  return [&seg, lambda](double x, const Vec<S, 2>& v) -> Vec<S, 2> {
    const S k2 = lambda * seg.w + seg.q_at(x);
    return {v[1], -k2 * v[0]};
  };
}

StateVector advance_segment(const Segment& seg, cplx lambda, StateVector s, double x_to, const PropagateOptions& opts) {
  const double len = x_to - s.x;
  if (len <= 0.0) return s;
  if (!seg.affine && !opts.force_adaptive) {
    StateVector r = piece_transfer(lambda * seg.w + seg.q0, len).apply(s);
    r.x = x_to;
    return r;
  }
  const double cap = 2.0 / std::sqrt(std::max(max_abs_k2(seg, lambda), 1e-300));
  auto y = detail::dopri_integrate<cplx, 2>(ode_rhs<cplx>(seg, lambda), Vec<cplx, 2>{s.y, s.yp}, s.x, x_to,
                                            std::min(cap, len), opts, [](auto&&...) {});
  return {y[0], y[1], x_to};
}

TransferMatrix segment_matrix(const Segment& seg, cplx lambda, double x0, double x1, const PropagateOptions& opts) {
  const double len = x1 - x0;
  if (!seg.affine && !opts.force_adaptive) {
    TransferMatrix m = piece_transfer(lambda * seg.w + seg.q0, len);
    m.x0 = x0;
    m.x1 = x1;
    return m;
  }
  auto rhs = [&seg, lambda](double x, const Vec<cplx, 4>& v) -> Vec<cplx, 4> {
    const cplx k2 = lambda * seg.w + seg.q_at(x);
    return {v[1], -k2 * v[0], v[3], -k2 * v[2]};
  };
  const double cap = 2.0 / std::sqrt(std::max(max_abs_k2(seg, lambda), 1e-300));
  auto v = detail::dopri_integrate<cplx, 4>(rhs, Vec<cplx, 4>{1.0, 0.0, 0.0, 1.0}, x0, x1, std::min(cap, len), opts,
                                            [](auto&&...) {});
  return {v[0], v[2], v[1], v[3], x0, x1};
}

struct RealCursor {
  double y;
  double yp;
  int zeros = 0;
  double norm = 0.0;
  bool breakpoint_zero = false;
};

bool sign_change(double y0, double y1) { return y0 != 0.0 && (y1 == 0.0 || std::signbit(y0) != std::signbit(y1)); }

// Closed-form advance over [x0, x0 + len] of a constant segment with zero bookkeeping.
void real_constant(double z, double w, double len, RealCursor& c, bool with_norm) {
  const double cs = entire::cosine(z, len);
  const double sn = entire::sine(z, len);
  const double y1 = cs * c.y + sn * c.yp;
  const double yp1 = -z * sn * c.y + cs * c.yp;
  if (with_norm) c.norm += w * entire::square_integral(z, len, c.y, c.yp);

  if (z > 0.0) {
    // the scaled Prüfer phase φ = atan2(k y, y') advances by exactly k·len; the unscaled
    // phase shares its zero crossings, so pick the branch of atan2(y1, y1') nearest to
    // the phase predicted from φ
    const double k = std::sqrt(z);
    const double phi1 = half_angle(k * c.y, c.yp) + k * len;
    const double blocks = std::floor(phi1 / kPi);
    const double f = phi1 - blocks * kPi;
    const double predicted = blocks * kPi + half_angle(std::sin(f), k * std::cos(f));
    const double t1 = half_angle(y1, yp1);
    c.zeros += static_cast<int>(std::lround((predicted - t1) / kPi));
  } else if (sign_change(c.y, y1)) {
    c.zeros += 1;
  }
  c.y = y1;
  c.yp = yp1;
}

void real_affine(const Segment& seg, double lambda, double x0, double x1, RealCursor& c, const PropagateOptions& opts) {
  auto rhs = [&seg, lambda](double x, const Vec<double, 3>& v) -> Vec<double, 3> {
    const double k2 = lambda * seg.w + seg.q_at(x);
    return {v[1], -k2 * v[0], seg.w * v[0] * v[0]};
  };
  // steps shorter than π/√max k2 hold at most one zero (Sturm comparison)
  const double cap = step_cap(max_k2(seg, lambda), x1 - x0);
  int zeros = 0;
  auto v = detail::dopri_integrate<double, 3>(rhs, Vec<double, 3>{c.y, c.yp, 0.0}, x0, x1, cap, opts,
                                              [&zeros](double, const Vec<double, 3>& a, double, const Vec<double, 3>& b) {
                                                if (sign_change(a[0], b[0])) ++zeros;
                                              });
  c.y = v[0];
  c.yp = v[1];
  c.norm += v[2];
  c.zeros += zeros;
}

void real_segment(const Segment& seg, double lambda, double x0, double x1, RealCursor& c, const SweepOptions& opts) {
  if (x1 <= x0) return;
  if (!seg.affine && !opts.propagate.force_adaptive) {
    real_constant(lambda * seg.w + seg.q0, seg.w, x1 - x0, c, opts.with_norm);
  } else {
    real_affine(seg, lambda, x0, x1, c, opts.propagate);
  }
}

double real_value_at(const Segment& seg, double lambda, double x0, double y0, double yp0, double x,
                     const PropagateOptions& opts) {
  if (x <= x0) return y0;
  RealCursor c{y0, yp0};
  real_segment(seg, lambda, x0, x, c, {opts, false});
  return c.y;
}

}  // namespace

TransferMatrix operator*(const TransferMatrix& later, const TransferMatrix& earlier) {
  return {later.m11 * earlier.m11 + later.m12 * earlier.m21, later.m11 * earlier.m12 + later.m12 * earlier.m22,
          later.m21 * earlier.m11 + later.m22 * earlier.m21, later.m21 * earlier.m12 + later.m22 * earlier.m22,
          earlier.x0, later.x1};
}

TransferMatrix piece_transfer(cplx k2, double length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidInput("piece_transfer requires a positive length");
  if (k2.imag() == 0.0) {
    const double z = k2.real();
    const double c = entire::cosine(z, length);
    const double s = entire::sine(z, length);
    return {c, s, -z * s, c, 0.0, length};
  }
  const cplx c = entire::cosine(k2, length);
  const cplx s = entire::sine(k2, length);
  return {c, s, -k2 * s, c, 0.0, length};
}

StateVector initial_state(const ProblemSpec& spec) {
  if (spec.alpha() == 0.0) return {0.0, 1.0, spec.a()};
  return {std::sin(spec.alpha()), std::cos(spec.alpha()), spec.a()};
}

TransferMatrix transfer_between(const ProblemSpec& spec, cplx lambda, double x0, double x1,
                                const PropagateOptions& opts) {
  if (!(x0 >= spec.a() && x1 <= spec.b() && x0 <= x1)) throw InvalidInput("transfer_between: bad sub-interval");
  TransferMatrix m{1.0, 0.0, 0.0, 1.0, x0, x0};
  for (const Segment& seg : detail::segments(spec.coeff(), x0, x1)) {
    m = segment_matrix(seg, lambda, seg.x0, seg.x1, opts) * m;
  }
  m.x0 = x0;
  m.x1 = x1;
  return m;
}

Propagation propagate(const ProblemSpec& spec, cplx lambda, const PropagateOptions& opts) {
  const TransferMatrix m = transfer_between(spec, lambda, spec.a(), spec.b(), opts);
  return {m.apply(initial_state(spec)), m};
}

StateVector advance(const ProblemSpec& spec, cplx lambda, const StateVector& s, double x_to,
                    const PropagateOptions& opts) {
  if (!(x_to >= s.x && s.x >= spec.a() && x_to <= spec.b())) throw InvalidInput("advance: target outside [x, b]");
  StateVector cur = s;
  for (const Segment& seg : detail::segments(spec.coeff(), s.x, x_to)) {
    cur = advance_segment(seg, lambda, cur, seg.x1, opts);
  }
  cur.x = x_to;
  return cur;
}

std::vector<StateVector> solution_at(const ProblemSpec& spec, cplx lambda, std::span<const double> xs,
                                     const PropagateOptions& opts) {
  if (!std::is_sorted(xs.begin(), xs.end())) throw InvalidInput("solution_at: points must be sorted");
  if (!xs.empty() && (xs.front() < spec.a() || xs.back() > spec.b())) {
    throw InvalidInput("solution_at: points must lie inside [a, b]");
  }
  std::vector<StateVector> out;
  out.reserve(xs.size());
  StateVector cur = initial_state(spec);
  for (double x : xs) {
    cur = advance(spec, lambda, cur, x, opts);
    out.push_back(cur);
  }
  return out;
}

RealSweep sweep_real_from(const PiecewiseCoefficient& coeff, double lambda, double x0, double x1, double y0,
                          double yp0, const SweepOptions& opts) {
  RealCursor c{y0, yp0};
  for (const Segment& seg : detail::segments(coeff, x0, x1)) {
    real_segment(seg, lambda, seg.x0, seg.x1, c, opts);
    if (seg.interior_end && std::abs(c.y) <= 1e-13 * std::hypot(c.y, c.yp * (x1 - x0))) c.breakpoint_zero = true;
  }
  // θ(x0) lies in [0, π); each zero in (x0, x1] adds π
  const double theta = c.zeros * kPi + half_angle(c.y, c.yp);
  return {c.y, c.yp, c.zeros, theta, c.norm, c.breakpoint_zero};
}

RealSweep sweep_real(const ProblemSpec& spec, double lambda, const SweepOptions& opts) {
  const StateVector s0 = initial_state(spec);
  return sweep_real_from(spec.coeff(), lambda, spec.a(), spec.b(), s0.y.real(), s0.yp.real(), opts);
}

std::vector<double> solution_zeros(const ProblemSpec& spec, double lambda, const PropagateOptions& opts) {
  std::vector<double> zeros;
  const StateVector s0 = initial_state(spec);
  double y = s0.y.real();
  double yp = s0.yp.real();
  const double b = spec.b();

  for (const Segment& seg : detail::segments(spec.coeff(), spec.a(), b)) {
    const double kmax = max_k2(seg, lambda);
    // sub-intervals short enough to contain at most one zero
    const int parts = kmax > 0.0 ? static_cast<int>(std::ceil(seg.length() * std::sqrt(kmax))) + 1 : 1;
    double xl = seg.x0;
    for (int i = 1; i <= parts; ++i) {
      const double xr = i == parts ? seg.x1 : seg.x0 + seg.length() * i / parts;
      RealCursor c{y, yp};
      real_segment(seg, lambda, xl, xr, c, {opts, false});
      if (c.y == 0.0 && xr < b) {
        zeros.push_back(xr);
      } else if (sign_change(y, c.y)) {
        const double ya = y, ypa = yp, xa = xl;
        auto f = [&](double x) { return real_value_at(seg, lambda, xa, ya, ypa, x, opts); };
        boost::uintmax_t iters = 200;
        auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-15 * std::max(1.0, std::abs(lo)); };
        auto [lo, hi] = boost::math::tools::toms748_solve(f, xl, xr, y, c.y, tol, iters);
        const double root = 0.5 * (lo + hi);
        if (root < b) zeros.push_back(root);
      }
      y = c.y;
      yp = c.yp;
      xl = xr;
    }
  }
  return zeros;
}

}  // namespace slspec
