// SPDX-License-Identifier: Apache-2.0
#include "slspec/certificates.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "slspec/entire.hpp"
#include "slspec/errors.hpp"

namespace slspec {

namespace {

constexpr double kPi = std::numbers::pi;
// Rounding slack for inequalities that are tight by construction (e.g. (d − c)√(5M) = π/2).
constexpr double kSlack = 1e-12;

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string interval(double lo, double hi) { return "(" + num(lo) + ", " + num(hi) + ")"; }

bool le(double v, double bound) { return v <= bound + kSlack * std::max(1.0, std::abs(bound)); }
bool ge(double v, double bound) { return v >= bound - kSlack * std::max(1.0, std::abs(bound)); }
bool gt(double v, double bound) { return v > bound + kSlack * std::max(1.0, std::abs(bound)); }

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

// Exact range of λ w + q over the open interval (lo, hi): constant pieces contribute their value,
// sampled pieces their node values (linear interpolation attains its extremes there).
Range coefficient_range(const PiecewiseCoefficient& coeff, double lambda, double lo, double hi) {
  Range r;
  for (const Piece& p : coeff.pieces()) {
    if (p.x1 <= lo || p.x0 >= hi) continue;
    const double l = std::max(lo, p.x0);
    const double h = std::min(hi, p.x1);
    r.lo = std::min(r.lo, lambda * p.w + p.q_min(l, h));
    r.hi = std::max(r.hi, lambda * p.w + p.q_max(l, h));
  }
  return r;
}

Range potential_range(const PiecewiseCoefficient& coeff, double lo, double hi) {
  return coefficient_range(coeff, 0.0, lo, hi);
}

void require_dirichlet(const ProblemSpec& spec, const char* who) {
  if (!spec.dirichlet()) throw InvalidInput(std::string(who) + ": Dirichlet conditions required");
}

// w > 0 exactly on (c, d), w < 0 on the rest of (a, b).
void require_single_positive_block(const ProblemSpec& spec, double c, double d, double e, const char* who) {
  if (!(spec.a() < c && c < d && d < e && e < spec.b())) {
    throw InvalidInput(std::string(who) + ": need a < c < d < e < b");
  }
  for (const Piece& p : spec.coeff().pieces()) {
    const bool inside = p.x0 < d && p.x1 > c;
    const bool outside = p.x0 < c || p.x1 > d;
    if ((inside && p.w <= 0.0) || (outside && p.w >= 0.0)) {
      throw InvalidInput(std::string(who) + ": w must be positive exactly on " + interval(c, d) +
                         " and negative elsewhere");
    }
  }
}

void finalize(BoundCertificate& cert) {
  cert.valid = !cert.hypothesis_trail.empty() &&
               std::all_of(cert.hypothesis_trail.begin(), cert.hypothesis_trail.end(),
                           [](const TrailEntry& t) { return t.pass; });
}

// Solution of u'' + (μ w + q) u = 0 sampled along a grid, zeros counted exactly between samples.
struct SampledSolution {
  int zeros = 0;
  double min_u = std::numeric_limits<double>::infinity();
};

SampledSolution sample_solution(const PiecewiseCoefficient& coeff, double mu, double x_start, double y0, double yp0,
                                double c, double d, const PropagateOptions& opts) {
  std::vector<double> grid{c, d};
  for (const Piece& p : coeff.pieces()) {
    if (p.x0 > c && p.x0 < d) grid.push_back(p.x0);
  }
  constexpr int kUniform = 64;
  for (int i = 1; i < kUniform; ++i) grid.push_back(c + (d - c) * i / kUniform);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  SampledSolution out;
  double x = x_start;
  double y = y0;
  double yp = yp0;
  for (double g : grid) {
    if (g > x) {
      const RealSweep s = sweep_real_from(coeff, mu, x, g, y, yp, {opts, false});
      out.zeros += s.zeros;
      y = s.y;
      yp = s.yp;
      x = g;
    }
    out.min_u = std::min(out.min_u, y);
  }
  return out;
}

double lowest_w1_eigenvalue(const ProblemSpec& unit, const PropagateOptions& opts) {
  auto f = [&](double lam) { return sweep_real(unit, lam, {opts, false}).theta + unit.beta() - kPi; };
  double qmax = -std::numeric_limits<double>::infinity();
  double qmin = std::numeric_limits<double>::infinity();
  for (const Piece& p : unit.coeff().pieces()) {
    qmax = std::max(qmax, p.q_max(p.x0, p.x1));
    qmin = std::min(qmin, p.q_min(p.x0, p.x1));
  }
  const double len = unit.b() - unit.a();
  double lo = -qmax - 1.0;
  double step = 1.0;
  double flo = f(lo);
  while (flo >= 0.0) {
    lo -= step;
    step *= 2.0;
    flo = f(lo);
    if (step > 1e300) throw NumericalFailure("lowest eigenvalue: no lower bracket");
  }
  double hi = std::max(lo + 1.0, kPi * kPi / (len * len) - qmin + 1.0);
  step = 1.0;
  double fhi = f(hi);
  while (fhi <= 0.0) {
    hi += step;
    step *= 2.0;
    fhi = f(hi);
    if (step > 1e300) throw NumericalFailure("lowest eigenvalue: no upper bracket");
  }
  boost::uintmax_t iters = 200;
  auto tol = [](double l, double h) { return std::abs(h - l) <= 1e-14 * std::max(1.0, std::abs(l)); };
  auto [l, h] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (l + h);
}

}  // namespace

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::one_tp: return "one_tp";
    case CertificateKind::prop3: return "prop3";
    case CertificateKind::prop4: return "prop4";
    case CertificateKind::prop5: return "prop5";
    case CertificateKind::application: return "application";
  }
  return "unknown";
}

const char* to_string(BoundDirection d) {
  return d == BoundDirection::upper_on_lambda_plus ? "upper_on_lambda_plus" : "lower_on_lambda_minus";
}

const char* to_string(WitnessMethod m) {
  return m == WitnessMethod::comparison ? "comparison" : "principal_solution";
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::polar: return "polar";
    case Definiteness::orthogonal: return "orthogonal";
    case Definiteness::nondefinite: return "nondefinite";
  }
  return "unknown";
}

void BoundCertificate::check(std::string condition, double value, bool pass) {
  hypothesis_trail.push_back({std::move(condition), value, pass});
  finalize(*this);
}

LemmaCheck verify_lemma_upper(double mu, Side side) {
  if (!(mu < kPi * kPi / 4.0)) throw HypothesisViolation("lemma (upper): requires mu < pi^2/4, got " + num(mu));
  LemmaCheck out;
  if (mu == 0.0) {
    // y = x: ∫ x² = 1/3 against y(1)²/2 = 1/2
    out.lhs = 1.0 / 3.0;
    out.rhs = 0.5;
  } else {
    // increasing solution vanishing at the left end: sin(kx), x or sinh(κx)
    const double slope = std::sqrt(std::abs(mu));
    const double y_end = entire::sine(mu, 1.0) * slope;
    out.lhs = entire::square_integral(mu, 1.0, 0.0, slope);
    out.rhs = 0.5 * y_end * y_end;
  }
  // both sides share the same witness up to translation by one unit
  (void)side;
  out.holds = out.lhs < out.rhs;
  return out;
}

LemmaCheck verify_lemma_lower(double mu, Side side, bool non_strict) {
  if (!(mu > 0.0)) throw HypothesisViolation("lemma (lower): requires mu > 0, got " + num(mu));
  const double k = std::sqrt(mu);
  const double s2k = std::sin(2.0 * k);
  const double band = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, 2.0 * k);
  if (non_strict ? s2k > band : s2k >= -band) {
    throw HypothesisViolation("lemma (lower): sign condition on y(0) y'(0) fails (sin 2k = " + num(s2k) + ")");
  }
  LemmaCheck out;
  if (side == Side::right) {
    // y = sin k(x − 1) on [0, 1]
    const double y0 = -std::sin(k);
    out.lhs = entire::square_integral(mu, 1.0, y0, k * std::cos(k));
    out.rhs = 0.5 * y0 * y0;
  } else {
    // y = sin k(x + 1) on [−1, 0]
    out.lhs = entire::square_integral(mu, 1.0, 0.0, k);
    const double y_end = std::sin(k);
    out.rhs = 0.5 * y_end * y_end;
  }
  out.holds = non_strict ? out.lhs >= out.rhs : out.lhs > out.rhs;
  return out;
}

OneTurningPointBounds bound_one_turning_point(double q0) {
  const double threshold = -kPi * kPi / 4.0;
  if (!(q0 < threshold)) {
    throw HypothesisViolation("one turning point bound: requires q0 < -pi^2/4, got " + num(q0));
  }
  const double gap = std::abs(q0) - kPi * kPi / 4.0;
  OneTurningPointBounds out;
  out.upper.kind = CertificateKind::one_tp;
  out.upper.bound = gap;
  out.upper.direction = BoundDirection::upper_on_lambda_plus;
  out.upper.check("q0 < -pi^2/4", q0, true);
  out.lower.kind = CertificateKind::one_tp;
  out.lower.bound = -gap;
  out.lower.direction = BoundDirection::lower_on_lambda_minus;
  out.lower.check("q0 < -pi^2/4", q0, true);
  return out;
}

std::optional<DisconjugacyWitness> disconjugate_on(const PiecewiseCoefficient& coeff, double mu, double c, double d,
                                                   const PropagateOptions& opts) {
  if (!(coeff.a() <= c && c < d && d <= coeff.b())) {
    throw InvalidInput("disconjugate_on: need a <= c < d <= b, got " + interval(c, d));
  }
  DisconjugacyWitness w{c, d, mu, 0.0, WitnessMethod::principal_solution};
  if (coefficient_range(coeff, mu, c, d).hi <= 0.0) {
    // u'' = −(μ w + q) u ≥ 0: the solution u(c) = 1, u'(c) = 0 is convex and never drops below 1
    w.method = WitnessMethod::comparison;
    w.min_u = 1.0;
    return w;
  }
  const double delta = 1e-6 * (d - c);
  const SampledSolution s = sample_solution(coeff, mu, c - delta, 0.0, 1.0, c, d, opts);
  if (s.zeros != 0 || !(s.min_u > 0.0)) return std::nullopt;
  w.min_u = s.min_u;
  return w;
}

std::vector<double> eigenfunction_nodes(const ProblemSpec& spec, double lambda, const PropagateOptions& opts) {
  const double guard = 1e-8 * (spec.b() - spec.a());
  std::vector<double> nodes{spec.a()};
  for (double z : solution_zeros(spec, lambda, opts)) {
    if (z > spec.a() + guard && z < spec.b() - guard) nodes.push_back(z);
  }
  nodes.push_back(spec.b());
  return nodes;
}

BoundCertificate certify_prop3(const ProblemSpec& spec, double lambda, const std::vector<double>& mus,
                               const Prop3Options& opts) {
  require_dirichlet(spec, "certify_prop3");
  const RealSweep sweep = sweep_real(spec, lambda, {opts.propagate, false});
  const double miss = std::abs(sweep.y) / std::hypot(sweep.y, sweep.yp);
  if (!(miss < opts.eigen_tol)) {
    throw InvalidInput("certify_prop3: " + num(lambda) + " is not an eigenvalue (|sin theta(b)| = " + num(miss) + ")");
  }
  const std::vector<double> nodes = eigenfunction_nodes(spec, lambda, opts.propagate);
  const std::size_t gaps = nodes.size() - 1;
  if (mus.size() != gaps) {
    throw InvalidInput("certify_prop3: eigenfunction has " + std::to_string(gaps) + " zero gaps but " +
                       std::to_string(mus.size()) + " mu values were given");
  }
  const bool upper = opts.variant == Prop3Variant::upper;
  for (double mu : mus) {
    if (upper ? !(mu < lambda) : !(mu > lambda)) {
      throw HypothesisViolation("certify_prop3: mu = " + num(mu) + (upper ? " must be below" : " must be above") +
                                " lambda = " + num(lambda));
    }
  }

  BoundCertificate cert;
  cert.kind = CertificateKind::prop3;
  cert.bound = lambda;
  cert.direction = upper ? BoundDirection::upper_on_lambda_plus : BoundDirection::lower_on_lambda_minus;
  cert.check("lambda is an eigenvalue: |sin theta(b)| < " + num(opts.eigen_tol), miss, true);
  for (std::size_t j = 0; j < gaps; ++j) {
    const auto w = disconjugate_on(spec.coeff(), mus[j], nodes[j], nodes[j + 1], opts.propagate);
    cert.check("positive solution of u'' + (mu w + q) u = 0 on [" + num(nodes[j]) + ", " + num(nodes[j + 1]) +
                   "] with mu = " + num(mus[j]) + (w ? std::string(" (") + to_string(w->method) + ")" : ""),
               w ? w->min_u : 0.0, w.has_value());
  }
  return cert;
}

std::vector<double> suggest_gap_mus(const ProblemSpec& spec, double lambda, Prop3Variant variant,
                                    const PropagateOptions& opts) {
  const std::vector<double> nodes = eigenfunction_nodes(spec, lambda, opts);
  const double scale = std::max(1.0, std::abs(lambda));
  const double sign = variant == Prop3Variant::upper ? -1.0 : 1.0;
  std::vector<double> mus;
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    double chosen = lambda;
    for (double delta = 1e-6 * scale; delta <= 1e4 * scale; delta *= 4.0) {
      chosen = lambda + sign * delta;
      if (disconjugate_on(spec.coeff(), chosen, nodes[j], nodes[j + 1], opts)) break;
    }
    mus.push_back(chosen);
  }
  return mus;
}

BoundCertificate certify_prop4(const ProblemSpec& spec, double mu, double lambda_star, double c, double d, double e,
                               const PropagateOptions& opts) {
  require_dirichlet(spec, "certify_prop4");
  require_single_positive_block(spec, c, d, e, "certify_prop4");
  if (!(lambda_star > mu)) {
    throw HypothesisViolation("certify_prop4: requires lambda* > mu, got lambda* = " + num(lambda_star) +
                              ", mu = " + num(mu));
  }
  BoundCertificate cert;
  cert.kind = CertificateKind::prop4;
  cert.bound = lambda_star;

  const auto w = disconjugate_on(spec.coeff(), mu, spec.a(), e, opts);
  cert.check("positive solution of u'' + (mu w + q) u = 0 on [a, e] = [" + num(spec.a()) + ", " + num(e) +
                 "] with mu = " + num(mu),
             w ? w->min_u : 0.0, w.has_value());

  const RealSweep to_c = sweep_real_from(spec.coeff(), lambda_star, spec.a(), c, 0.0, 1.0, {opts, false});
  const RealSweep across = sweep_real_from(spec.coeff(), lambda_star, c, d, to_c.y, to_c.yp, {opts, false});
  const int inside = across.zeros - (across.y == 0.0 ? 1 : 0);
  cert.check("solution with y(a) = 0 at lambda* = " + num(lambda_star) + " has a zero in " + interval(c, d), inside,
             inside >= 1);
  return cert;
}

BoundCertificate certify_prop5(const ProblemSpec& spec, double mu, double lambda_star, double c, double d, double e) {
  require_dirichlet(spec, "certify_prop5");
  require_single_positive_block(spec, c, d, e, "certify_prop5");
  if (!(lambda_star > mu)) {
    throw HypothesisViolation("certify_prop5: requires lambda* > mu, got lambda* = " + num(lambda_star) +
                              ", mu = " + num(mu));
  }
  const PiecewiseCoefficient& coeff = spec.coeff();
  BoundCertificate cert;
  cert.kind = CertificateKind::prop5;
  cert.bound = lambda_star;

  const double left = coefficient_range(coeff, mu, spec.a(), c).hi;
  cert.check("(19) mu w + q <= 0 on " + interval(spec.a(), c), left, le(left, 0.0));
  const Range middle = coefficient_range(coeff, mu, c, d);
  cert.check("(20) mu w + q >= 0 on " + interval(c, d), middle.lo, ge(middle.lo, 0.0));
  const double right = coefficient_range(coeff, mu, d, e).hi;
  cert.check("(21) mu w + q <= 0 on " + interval(d, e), right, le(right, 0.0));
  const double sup_root = (d - c) * std::sqrt(std::max(middle.hi, 0.0));
  cert.check("(22) (d - c) sup sqrt(mu w + q) <= pi/2 on " + interval(c, d), sup_root, le(sup_root, kPi / 2.0));
  const double star_lo = coefficient_range(coeff, lambda_star, c, d).lo;
  const double inf_root = star_lo > 0.0 ? (d - c) * std::sqrt(star_lo) : 0.0;
  cert.check("(23) (d - c) inf sqrt(lambda* w + q) > pi on " + interval(c, d), inf_root, gt(inf_root, kPi));
  return cert;
}

BoundCertificate certify_application(double M, const ProblemSpec& spec) {
  require_dirichlet(spec, "certify_application");
  bool canonical = spec.a() == -1.0 && spec.b() == 2.0;
  for (const Piece& p : spec.coeff().pieces()) {
    const double expected = p.x0 >= 0.0 && p.x1 <= 1.0 ? 2.0 : (p.x1 <= 0.0 || p.x0 >= 1.0 ? -1.0 : 0.0);
    canonical = canonical && p.w == expected;
  }
  if (!canonical) throw InvalidInput("certify_application: weight must be (-1, 2, -1) on [-1, 0], [0, 1], [1, 2]");
  if (!(M > kPi * kPi / 20.0) || !std::isfinite(M)) {
    throw HypothesisViolation("certify_application: requires M > pi^2/20, got " + num(M));
  }
  const PiecewiseCoefficient& coeff = spec.coeff();
  const double d = kPi / (2.0 * std::sqrt(5.0 * M));
  const double e = 1.0 + d;

  BoundCertificate cert;
  cert.kind = CertificateKind::application;
  cert.bound = 10.5 * M;

  const double mc1 = potential_range(coeff, -1.0, 0.0).hi;
  cert.check("q <= M on (-1, 0)", mc1, le(mc1, M));
  const Range near = potential_range(coeff, 0.0, d);
  const double mc2 = std::max(std::abs(near.lo), std::abs(near.hi));
  cert.check("|q| <= M on " + interval(0.0, d), mc2, le(mc2, M));
  const double mc3 = potential_range(coeff, 1.0, e).hi;
  cert.check("q <= M on " + interval(1.0, e), mc3, le(mc3, M));

  // the strict conclusion λ⁺ < 21M/2 comes from any λ* above 21M/2; certify just above it
  const double mu = 2.0 * M;
  const double lambda_star = 10.5 * M + 1e-9 * M;
  cert.check("delegated with mu = 2M, lambda* = 21M/2 + 1e-9 M", lambda_star, true);
  const double c19 = coefficient_range(coeff, mu, -1.0, 0.0).hi;
  cert.check("(19) mu w + q <= 0 on (-1, 0)", c19, le(c19, 0.0));
  const Range mid = coefficient_range(coeff, mu, 0.0, d);
  cert.check("(20) mu w + q >= 0 on " + interval(0.0, d), mid.lo, ge(mid.lo, 0.0));
  // on (d, 1) the weight is positive and mu w + q = 4M + q; only the negative-weight part can hold
  const double c21 = coefficient_range(coeff, mu, 1.0, e).hi;
  cert.check("(21) mu w + q <= 0 on the negative-weight part " + interval(1.0, e), c21, le(c21, 0.0));
  const double c22 = d * std::sqrt(std::max(mid.hi, 0.0));
  cert.check("(22) (d - c) sup sqrt(mu w + q) <= pi/2", c22, le(c22, kPi / 2.0));
  const double star_lo = coefficient_range(coeff, lambda_star, 0.0, d).lo;
  const double c23 = star_lo > 0.0 ? d * std::sqrt(star_lo) : 0.0;
  cert.check("(23) (d - c) inf sqrt(lambda* w + q) > pi", c23, gt(c23, kPi));
  return cert;
}

BoundCertificate certify_application(double M, const std::vector<PotentialSegment>& q) {
  return certify_application(M, application(q));
}

Classification classify_definiteness(const ProblemSpec& spec, const PropagateOptions& opts) {
  Classification out;
  const PiecewiseCoefficient& coeff = spec.coeff();

  std::vector<Piece> unit_pieces(coeff.pieces().begin(), coeff.pieces().end());
  for (Piece& p : unit_pieces) p.w = 1.0;
  const ProblemSpec unit(spec.a(), spec.b(), spec.alpha(), spec.beta(), PiecewiseCoefficient(std::move(unit_pieces)));
  out.lambda0 = lowest_w1_eigenvalue(unit, opts);
  out.l_definite = out.lambda0 > 0.0;

  out.r_definite = coeff.w_constant_sign();
  if (out.r_definite) {
    out.w_sign = coeff.pieces().front().w > 0.0 ? 1 : -1;
    out.witnesses.push_back({"R", "sign of w", static_cast<double>(out.w_sign)});
  } else {
    // sin² bumps supported in one piece of each sign: ∫ w sin⁴(π(x − x0)/L) = 3 w L / 8
    bool have_pos = false;
    bool have_neg = false;
    for (const Piece& p : coeff.pieces()) {
      bool& have = p.w > 0.0 ? have_pos : have_neg;
      if (have) continue;
      have = true;
      out.witnesses.push_back({"R", "sin^2(pi (x - " + num(p.x0) + ") / " + num(p.length()) + ") on [" + num(p.x0) +
                                        ", " + num(p.x1) + "]",
                               3.0 * p.w * p.length() / 8.0});
    }
  }

  // lowest eigenfunction of the unit-weight problem: (L φ, φ) = Λ₀ ∫ φ²
  const double phi_norm = sweep_real(unit, out.lambda0, {opts, true}).weighted_norm;
  out.witnesses.push_back({"L", "lowest eigenfunction of -y'' - q y = Lambda y", out.lambda0 * phi_norm});

  // high-frequency sine vanishing at both ends: (L y, y) = κ² L/2 − ∫ q sin²(κ (x − a))
  const double len = spec.b() - spec.a();
  double qabs = 0.0;
  for (const Piece& p : coeff.pieces()) {
    qabs = std::max({qabs, std::abs(p.q_min(p.x0, p.x1)), std::abs(p.q_max(p.x0, p.x1))});
  }
  const int n = static_cast<int>(std::ceil(len * std::sqrt(2.0 * qabs + 1.0) / kPi)) + 1;
  const double kappa = n * kPi / len;
  double potential = 0.0;
  for (const Piece& p : coeff.pieces()) {
    auto f = [&](double x) {
      const double s = std::sin(kappa * (x - spec.a()));
      return p.q_at(x) * s * s;
    };
    potential += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, p.x0, p.x1, 15, 1e-12);
  }
  out.witnesses.push_back(
      {"L", "sin(" + std::to_string(n) + " pi (x - a) / (b - a))", kappa * kappa * len / 2.0 - potential});

  if (out.r_definite) {
    out.kind = Definiteness::orthogonal;
  } else if (out.l_definite) {
    out.kind = Definiteness::polar;
  } else {
    out.kind = Definiteness::nondefinite;
  }
  return out;
}

}  // namespace slspec
