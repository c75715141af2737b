// SPDX-License-Identifier: Apache-2.0
#include "slspec/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include <boost/math/tools/toms748_solve.hpp>

#include "slspec/errors.hpp"
#include "slspec/serialize.hpp"

namespace slspec {

namespace {

constexpr double kPi = std::numbers::pi;

// Prüfer phase Θ(λ) + β at b and its λ-derivative ∫ w y² / (y² + y'²).
struct PhaseSample {
  double lambda;
  double phase;
  double slope;
};

class PhaseFunction {
 public:
  PhaseFunction(const ProblemSpec& spec, const PropagateOptions& opts) : spec_(spec), opts_{opts, true} {}

  PhaseSample operator()(double lambda) const {
    const RealSweep s = sweep_real(spec_, lambda, opts_);
    const double rho2 = s.y * s.y + s.yp * s.yp;
    return {lambda, s.theta + spec_.beta(), s.weighted_norm / rho2};
  }

 private:
  const ProblemSpec& spec_;
  SweepOptions opts_;
};

double rel_width(double tol, double lambda) { return tol * std::max(1.0, std::abs(lambda)); }

// The same problem under x ↦ a + b − x; the β condition becomes the initial condition.
ProblemSpec reflected(const ProblemSpec& spec) {
  const double s = spec.a() + spec.b();
  std::vector<Piece> pieces;
  const auto src = spec.coeff().pieces();
  for (auto it = src.rbegin(); it != src.rend(); ++it) {
    Piece p{s - it->x1, s - it->x0, it->w, it->q};
    if (const auto* t = std::get_if<SampledTable>(&it->q)) {
      SampledTable r;
      for (std::size_t i = t->x.size(); i-- > 0;) {
        r.x.push_back(s - t->x[i]);
        r.q.push_back(t->q[i]);
      }
      p.q = std::move(r);
    }
    pieces.push_back(std::move(p));
  }
  return ProblemSpec(s - spec.b(), s - spec.a(), spec.beta(), spec.alpha(), PiecewiseCoefficient(std::move(pieces)));
}

// Near an eigenvalue whose eigenfunction decays into an end region, the forward solution carries
// a growing-mode error there that swamps both ∫ w y² and the zero count. Shooting from both ends
// and matching where the product of the two amplitudes peaks keeps each part well conditioned.
EigenRecord make_real_record(const ProblemSpec& spec, double lambda, const PropagateOptions& opts) {
  const RealSweep full = sweep_real(spec, lambda, {opts, false});
  EigenRecord r;
  r.lambda = lambda;
  r.residual = std::abs(full.y * std::cos(spec.beta()) + full.yp * std::sin(spec.beta()));

  const ProblemSpec mirror = reflected(spec);
  const double s = spec.a() + spec.b();
  std::vector<double> xs;
  for (const Piece& p : spec.coeff().pieces()) {
    // golden-ratio offsets so that no eigenfunction has zeros at all of them
    for (int k = 1; k <= 9; ++k) {
      const double t = 0.1 + 0.8 * std::fmod(k * 0.6180339887498949, 1.0);
      xs.push_back(p.x0 + t * (p.x1 - p.x0));
    }
    std::sort(xs.end() - 9, xs.end());
  }
  std::vector<double> ts;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) ts.push_back(s - *it);
  const std::vector<StateVector> left = solution_at(spec, lambda, xs, opts);
  const std::vector<StateVector> right = solution_at(mirror, lambda, ts, opts);
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const StateVector& l = left[i];
    const StateVector& rt = right[xs.size() - 1 - i];
    const double rl = std::hypot(std::abs(l.y), std::abs(l.yp));
    const double rr = std::hypot(std::abs(rt.y), std::abs(rt.yp));
    double score = std::log(rl) + std::log(rr);
    // a zero sitting on m could be counted on both sides or neither
    if (std::abs(l.y) < 0.3 * rl || std::abs(rt.y) < 0.3 * rr) score -= 1e6;
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  const double m = xs[best];
  const RealSweep L = sweep_real_from(spec.coeff(), lambda, spec.a(), m, std::sin(spec.alpha()),
                                      std::cos(spec.alpha()), {opts, true});
  const RealSweep R = sweep_real_from(mirror.coeff(), lambda, mirror.a(), s - m, std::sin(spec.beta()),
                                      std::cos(spec.beta()), {opts, true});
  // right solution at m is (R.y, −R.yp); scale it onto the left one
  const double scale = (L.y * R.y - L.yp * R.yp) / (R.y * R.y + R.yp * R.yp);
  r.weighted_norm = L.weighted_norm + scale * scale * R.weighted_norm;
  r.zeros_in_ab = L.zeros + R.zeros - (L.y == 0.0 ? 1 : 0);
  return r;
}

// True when the cubic Hermite interpolant of the phase has interior critical points although
// both end slopes share a sign (two extrema hiding inside the cell).
bool hermite_hides_extrema(const PhaseSample& l, const PhaseSample& r) {
  const double h = r.lambda - l.lambda;
  const double d0 = l.slope * h;
  const double d1 = r.slope * h;
  if (d0 * d1 <= 0.0) return false;
  const double dp = r.phase - l.phase;
  // p'(t) = d0 + (6dp − 4d0 − 2d1) t + (3d0 + 3d1 − 6dp) t²
  const double qa = 3.0 * d0 + 3.0 * d1 - 6.0 * dp;
  const double qb = 6.0 * dp - 4.0 * d0 - 2.0 * d1;
  const double qc = d0;
  if (qa == 0.0) return false;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0) return false;
  const double sq = std::sqrt(disc);
  for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
    if (t > 0.0 && t < 1.0) return true;
  }
  return false;
}

class RealScanner {
 public:
  RealScanner(const ProblemSpec& spec, const ScanOptions& opts) : spec_(spec), opts_(opts), phase_(spec, opts.propagate) {}

  std::vector<EigenRecord> scan_cell(const PhaseSample& l, const PhaseSample& r) {
    out_.clear();
    cell(l, r, 0);
    return std::move(out_);
  }

  PhaseSample sample(double lambda) const { return phase_(lambda); }

 private:
  void cell(const PhaseSample& l, const PhaseSample& r, int depth) {
    const double width = r.lambda - l.lambda;
    const double floor_width = 1e-3 * rel_width(opts_.tol, std::max(std::abs(l.lambda), std::abs(r.lambda)));
    const bool wide = std::abs(r.phase - l.phase) > 0.5 * kPi;
    const bool hidden = hermite_hides_extrema(l, r);
    if ((wide || hidden) && width > floor_width && depth < 200) {
      const PhaseSample m = phase_(0.5 * (l.lambda + r.lambda));
      cell(l, m, depth + 1);
      cell(m, r, depth + 1);
      return;
    }
    if (l.slope * r.slope < 0.0 && width > floor_width) {
      const PhaseSample e = extremum(l, r);
      monotone(l, e);
      monotone(e, r);
      touching(l, e, r);
      return;
    }
    monotone(l, r);
  }

  // Critical point of the phase inside (l, r), located by bracketing the slope.
  PhaseSample extremum(const PhaseSample& l, const PhaseSample& r) const {
    auto f = [this](double lam) { return phase_(lam).slope; };
    boost::uintmax_t iters = 100;
    const double tol = opts_.tol;
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= 0.1 * rel_width(tol, a); };
    auto [a, b] = boost::math::tools::toms748_solve(f, l.lambda, r.lambda, l.slope, r.slope, stop, iters);
    return phase_(0.5 * (a + b));
  }

  // Roots owned by (l, r]: the phase crosses a multiple of π.
  void monotone(const PhaseSample& l, const PhaseSample& r) {
    const bool up = r.phase >= l.phase;
    const double lo = std::min(l.phase, r.phase);
    const double hi = std::max(l.phase, r.phase);
    long m0 = static_cast<long>(std::floor(lo / kPi));
    for (long m = m0; m * kPi <= hi; ++m) {
      const double target = m * kPi;
      const bool owned = up ? (target > l.phase && target <= r.phase) : (target >= r.phase && target < l.phase);
      if (!owned) continue;
      double root;
      if (target == r.phase) {
        root = r.lambda;
      } else {
        auto f = [this, target](double lam) { return phase_(lam).phase - target; };
        boost::uintmax_t iters = 200;
        const double tol = opts_.tol;
        auto stop = [tol](double a, double b) { return std::abs(b - a) <= 0.5 * rel_width(tol, a); };
        auto [a, b] = boost::math::tools::toms748_solve(f, l.lambda, r.lambda, l.phase - target, r.phase - target,
                                                        stop, iters);
        root = 0.5 * (a + b);
      }
      out_.push_back(make_real_record(spec_, root, opts_.propagate));
    }
  }

  // A phase extremum that touches a multiple of π is a double eigenvalue; when it sits within
  // tol of it without crossing, record it as one (the conjugate pair is unresolvable from the axis).
  void touching(const PhaseSample& l, const PhaseSample& e, const PhaseSample& r) {
    const double m = std::round(e.phase / kPi);
    const double gap = e.phase - m * kPi;
    if (std::abs(gap) >= opts_.tol) return;
    const double target = m * kPi;
    const bool crossed_left = (l.phase - target) * (e.phase - target) <= 0.0;
    const bool crossed_right = (r.phase - target) * (e.phase - target) <= 0.0;
    // remove the separately found near-coincident roots, replace by one double root
    std::erase_if(out_, [&](const EigenRecord& rec) {
      return std::abs(rec.lambda.real() - e.lambda) <= 10.0 * rel_width(opts_.tol, e.lambda) &&
             (crossed_left || crossed_right);
    });
    EigenRecord rec = make_real_record(spec_, e.lambda, opts_.propagate);
    rec.double_root = true;
    out_.push_back(rec);
  }

  const ProblemSpec& spec_;
  const ScanOptions& opts_;
  PhaseFunction phase_;
  std::vector<EigenRecord> out_;
};

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

cplx characteristic(const ProblemSpec& spec, cplx lambda, const PropagateOptions& opts) {
  const StateVector s = propagate(spec, lambda, opts).terminal;
  if (spec.beta() == 0.0) return s.y;
  return s.y * std::cos(spec.beta()) + s.yp * std::sin(spec.beta());
}

ZeroCount count_zeros(const ProblemSpec& spec, double lambda, const PropagateOptions& opts) {
  const RealSweep s = sweep_real(spec, lambda, {opts, false});
  ZeroCount out{s.zeros, s.breakpoint_zero};
  if (s.y == 0.0) out.count -= 1;  // zero sitting exactly at b
  return out;
}

ScanResult find_real_eigenvalues(const ProblemSpec& spec, Window window, const ScanOptions& opts) {
  if (!(window.lo < window.hi)) throw InvalidInput("scan window must satisfy lo < hi");
  if (!(opts.tol > 0.0)) throw InvalidInput("tolerance must be positive");

  // grid spacing keeps the phase advance on the dominant piece below ~π per cell
  const double len = spec.b() - spec.a();
  const double spacing = opts.grid_factor * kPi * kPi / (len * len * spec.coeff().max_abs_w());
  const auto cells = static_cast<std::size_t>(std::ceil((window.hi - window.lo) / spacing));
  std::vector<double> grid(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    grid[i] = i == cells ? window.hi : window.lo + (window.hi - window.lo) * static_cast<double>(i) / cells;
  }

  RealScanner probe(spec, opts);
  std::vector<PhaseSample> samples(grid.size());
  const unsigned threads = worker_count(opts.threads);
  parallel_for(grid.size(), threads, [&](std::size_t i) { samples[i] = probe.sample(grid[i]); });

  // fixed chunking of the grid keeps results independent of the thread count
  constexpr std::size_t kChunk = 8;
  const std::size_t chunks = (cells + kChunk - 1) / kChunk;
  std::vector<std::vector<EigenRecord>> found(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    RealScanner scanner(spec, opts);
    for (std::size_t i = c * kChunk; i < std::min(cells, (c + 1) * kChunk); ++i) {
      auto recs = scanner.scan_cell(samples[i], samples[i + 1]);
      found[c].insert(found[c].end(), recs.begin(), recs.end());
    }
  });

  ScanResult result;
  result.window = window;
  // an eigenvalue exactly at the left edge is owned by no cell
  if (std::fmod(samples.front().phase, kPi) == 0.0) {
    result.records.push_back(make_real_record(spec, window.lo, opts.propagate));
  }
  for (auto& f : found) result.records.insert(result.records.end(), f.begin(), f.end());
  std::sort(result.records.begin(), result.records.end(),
            [](const EigenRecord& x, const EigenRecord& y) { return x.lambda.real() < y.lambda.real(); });
  auto dup = std::unique(result.records.begin(), result.records.end(), [&](const EigenRecord& x, const EigenRecord& y) {
    return std::abs(x.lambda.real() - y.lambda.real()) < rel_width(opts.tol, x.lambda.real()) * 0.5 &&
           x.zeros_in_ab == y.zeros_in_ab;
  });
  result.records.erase(dup, result.records.end());

  // the phase crosses a multiple of π within tol of an edge, whether or not the root fell inside
  for (const double edge : {window.lo, window.hi}) {
    const double w = rel_width(opts.tol, edge);
    const double below = std::floor(probe.sample(edge - w).phase / kPi);
    const double above = std::floor(probe.sample(edge + w).phase / kPi);
    if (below != above) {
      result.warnings.push_back("an eigenvalue lies within tol of the window boundary " + format_double(edge));
    }
  }
  result.n_R_empirical = empirical_richardson_index(result.records);
  result.n_H_empirical = empirical_haupt_index(result.records);
  return result;
}

namespace {

// Counts of real eigenvalues per oscillation number, over the range the window resolves on
// both sides of the spectrum (counts beyond the smaller branch top may be cut by the window).
struct CountEvidence {
  std::map<int, int> counts;
  int lo = 0;
  int hi = -1;
};

CountEvidence count_evidence(const std::vector<EigenRecord>& records) {
  CountEvidence ev;
  int top_pos = -1;
  int top_neg = -1;
  bool any_pos = false;
  bool any_neg = false;
  for (const EigenRecord& r : records) {
    if (r.lambda.imag() != 0.0 || r.zeros_in_ab < 0) continue;
    ev.counts[r.zeros_in_ab] += r.double_root ? 2 : 1;
    if (r.lambda.real() >= 0.0) {
      top_pos = std::max(top_pos, r.zeros_in_ab);
      any_pos = true;
    } else {
      top_neg = std::max(top_neg, r.zeros_in_ab);
      any_neg = true;
    }
  }
  if (ev.counts.empty()) return ev;
  ev.lo = ev.counts.begin()->first;
  ev.hi = (any_pos && any_neg) ? std::min(top_pos, top_neg) : std::max(top_pos, top_neg);
  return ev;
}

}  // namespace

std::optional<int> empirical_richardson_index(const std::vector<EigenRecord>& records) {
  const CountEvidence ev = count_evidence(records);
  if (ev.counts.empty() || ev.hi < ev.lo) return std::nullopt;
  for (int m = ev.lo; m <= ev.hi; ++m) {
    auto it = ev.counts.find(m);
    if (it == ev.counts.end() || it->second < 2) return std::nullopt;
  }
  return ev.lo;
}

std::optional<int> empirical_haupt_index(const std::vector<EigenRecord>& records) {
  const CountEvidence ev = count_evidence(records);
  if (ev.counts.empty() || ev.hi < ev.lo || !empirical_richardson_index(records)) return std::nullopt;
  int n_h = ev.hi + 1;
  for (int m = ev.hi; m >= ev.lo; --m) {
    if (ev.counts.at(m) != 2) break;
    n_h = m;
  }
  if (n_h > ev.hi) return std::nullopt;
  return n_h;
}

// ---------------------------------------------------------------------------------------------
// Complex eigenvalues

namespace {

class BoundaryHit : public std::runtime_error {
 public:
  BoundaryHit() : std::runtime_error("zero of D on the contour") {}
};

class ArgumentTracker {
 public:
  ArgumentTracker(const ProblemSpec& spec, const PropagateOptions& opts) : spec_(spec), opts_(opts) {}

  cplx d(cplx z) const { return characteristic(spec_, z, opts_); }

  // Total change of arg D along the straight segment p → q.
  double segment(cplx p, cplx q, cplx dp, cplx dq, int depth) const {
    const double direct = std::arg(dq / dp);
    const cplx m = 0.5 * (p + q);
    const cplx dm = d(m);
    if (std::abs(dm) == 0.0 || std::abs(dm) < 1e-14 * std::max(std::abs(dp), std::abs(dq))) throw BoundaryHit();
    const double a1 = std::arg(dm / dp);
    const double a2 = std::arg(dq / dm);
    if (std::abs(a1 + a2 - direct) < 1e-9 && std::abs(direct) < kPi / 4.0) return direct;
    if (depth >= kMaxDepth) {
      if (std::abs(a1 + a2) >= kPi) throw NumericalFailure("contour resolution error: argument jump > pi after refinement");
      return a1 + a2;
    }
    return segment(p, m, dp, dm, depth + 1) + segment(m, q, dm, dq, depth + 1);
  }

  double winding(const Rect& r) const {
    const cplx corners[] = {{r.re.lo, r.im.lo}, {r.re.hi, r.im.lo}, {r.re.hi, r.im.hi}, {r.re.lo, r.im.hi}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
      const cplx p = corners[e];
      const cplx q = corners[(e + 1) % 4];
      constexpr int kInitial = 16;
      cplx prev = p;
      cplx dprev = d(p);
      if (std::abs(dprev) == 0.0) throw BoundaryHit();
      for (int i = 1; i <= kInitial; ++i) {
        const cplx next = i == kInitial ? q : p + (q - p) * (double(i) / kInitial);
        const cplx dnext = d(next);
        if (std::abs(dnext) == 0.0) throw BoundaryHit();
        total += segment(prev, next, dprev, dnext, 0);
        prev = next;
        dprev = dnext;
      }
    }
    const double turns = total / (2.0 * kPi);
    const double n = std::round(turns);
    if (std::abs(turns - n) > 0.1) throw NumericalFailure("contour resolution error: non-integer winding number");
    return n;
  }

 private:
  static constexpr int kMaxDepth = 40;
  const ProblemSpec& spec_;
  const PropagateOptions& opts_;
};

// Winding number with the contour nudged outward when it passes through a zero.
int robust_winding(const ArgumentTracker& tr, Rect& r) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return static_cast<int>(tr.winding(r));
    } catch (const BoundaryHit&) {
      const double nudge = 1e-7 * (1 + attempt) * std::max({1.0, r.re.hi - r.re.lo, r.im.hi - r.im.lo});
      r.re.lo -= nudge * 0.37;
      r.re.hi += nudge * 0.61;
      r.im.lo -= r.im.lo > 0.0 ? std::min(nudge * 0.29, 0.5 * r.im.lo) : nudge * 0.29;
      r.im.hi += nudge * 0.53;
    }
  }
  throw NumericalFailure("contour resolution error: could not move the contour off a zero of D");
}

class ComplexSearch {
 public:
  ComplexSearch(const ProblemSpec& spec, const ScanOptions& opts) : spec_(spec), opts_(opts), tr_(spec, opts.propagate) {}

  std::vector<cplx> run(Rect r) {
    roots_.clear();
    const int n = robust_winding(tr_, r);
    if (n < 0) throw NumericalFailure("negative winding number for an entire function");
    search(r, n, 0);
    return roots_;
  }

 private:
  void search(const Rect& r, int n, int depth) {
    if (n <= 0) return;
    const double wr = r.re.hi - r.re.lo;
    const double wi = r.im.hi - r.im.lo;
    const cplx center{0.5 * (r.re.lo + r.re.hi), 0.5 * (r.im.lo + r.im.hi)};
    const double tiny = 1e-10 * std::max(1.0, std::abs(center));
    const bool exhausted = std::max(wr, wi) < tiny || depth > 120;
    if (n == 1 || exhausted) {
      const std::optional<cplx> z = newton(center, r);
      if (z && n == 1) {
        roots_.push_back(*z);
        return;
      }
      if (exhausted) {
        // a cluster that no longer separates: a multiple zero at machine resolution
        const cplx root = z.value_or(center);
        for (int k = 0; k < n; ++k) roots_.push_back(root);
        return;
      }
    }
    Rect a = r;
    Rect b = r;
    if (wr >= wi) {
      const double mid = r.re.lo + wr * 0.5;
      a.re.hi = mid;
      b.re.lo = mid;
    } else {
      const double mid = r.im.lo + wi * 0.5;
      a.im.hi = mid;
      b.im.lo = mid;
    }
    int na = 0;
    for (int attempt = 0;; ++attempt) {
      try {
        na = static_cast<int>(tr_.winding(a));
        break;
      } catch (const BoundaryHit&) {
        // shift the split line
        const double shift = (wr >= wi ? wr : wi) * 1e-3 * (attempt + 1) * 0.7071;
        if (wr >= wi) {
          a.re.hi += shift;
          b.re.lo += shift;
        } else {
          a.im.hi += shift;
          b.im.lo += shift;
        }
        if (attempt > 6) throw NumericalFailure("contour resolution error while subdividing");
      }
    }
    na = std::clamp(na, 0, n);
    search(a, na, depth + 1);
    search(b, n - na, depth + 1);
  }

  std::optional<cplx> newton(cplx z, const Rect& r) const {
    const double pad_re = 0.05 * (r.re.hi - r.re.lo);
    const double pad_im = 0.05 * (r.im.hi - r.im.lo);
    for (int it = 0; it < 60; ++it) {
      const cplx dz = tr_.d(z);
      if (std::abs(dz) < opts_.tol) break;
      const double h = 1e-6 * std::max(1.0, std::abs(z));
      const cplx deriv = (tr_.d(z + h) - tr_.d(z - h)) / (2.0 * h);
      if (deriv == 0.0) return std::nullopt;
      const cplx step = dz / deriv;
      z -= step;
      if (z.real() < r.re.lo - pad_re || z.real() > r.re.hi + pad_re || z.imag() < r.im.lo - pad_im ||
          z.imag() > r.im.hi + pad_im) {
        return std::nullopt;
      }
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    const double res = std::abs(tr_.d(z));
    // accept when the residual reached tol, or when Newton stalled at the attainable floor
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const double slope = std::abs((tr_.d(z + h) - tr_.d(z - h)) / (2.0 * h));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z)) * slope;
    if (res < opts_.tol || res <= floor) return z;
    return std::nullopt;
  }

  const ProblemSpec& spec_;
  const ScanOptions& opts_;
  ArgumentTracker tr_;
  std::vector<cplx> roots_;
};

bool inside(const Rect& r, cplx z) {
  return z.real() >= r.re.lo && z.real() <= r.re.hi && z.imag() >= r.im.lo && z.imag() <= r.im.hi;
}

}  // namespace

int winding_number(const ProblemSpec& spec, const Rect& rect, const PropagateOptions& opts) {
  if (!(rect.re.lo < rect.re.hi && rect.im.lo < rect.im.hi)) throw InvalidInput("rectangle must have positive extent");
  ArgumentTracker tr(spec, opts);
  Rect r = rect;
  return robust_winding(tr, r);
}

std::vector<EigenRecord> find_complex_eigenvalues(const ProblemSpec& spec, const Rect& rect, const ScanOptions& opts) {
  if (!(rect.re.lo < rect.re.hi && rect.im.lo < rect.im.hi)) throw InvalidInput("rectangle must have positive extent");
  if (!(opts.tol > 0.0)) throw InvalidInput("tolerance must be positive");

  std::vector<EigenRecord> out;
  auto record = [&](cplx z) {
    EigenRecord r;
    r.lambda = z;
    r.weighted_norm = std::nan("");
    r.residual = std::abs(characteristic(spec, z, opts.propagate));
    out.push_back(r);
  };

  // zeros with 0 < |Im λ| < axis_gap are not separated from the real axis
  const double axis_gap = 1e-6 * std::max(1.0, rect.re.hi - rect.re.lo);
  Rect upper = rect;
  if (rect.im.hi < 0.0) {
    upper.im = {-rect.im.hi, -rect.im.lo};
  } else if (rect.im.lo <= 0.0) {
    upper.im = {axis_gap, std::max(rect.im.hi, -rect.im.lo)};
  }
  if (upper.im.hi > upper.im.lo) {
    ComplexSearch search(spec, opts);
    std::vector<cplx> roots = search.run(upper);
    std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
      return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
    for (cplx z : roots) {
      if (inside(rect, z)) record(z);
      if (inside(rect, std::conj(z))) record(std::conj(z));
    }
  }
  if (rect.im.lo <= 0.0 && rect.im.hi >= 0.0) {
    ScanResult real = find_real_eigenvalues(spec, rect.re, opts);
    for (const EigenRecord& r : real.records) {
      out.push_back(r);
      if (r.double_root) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](const EigenRecord& x, const EigenRecord& y) {
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
    return x.lambda.imag() < y.lambda.imag();
  });
  return out;
}

}  // namespace slspec
