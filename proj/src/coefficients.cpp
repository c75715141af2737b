// SPDX-License-Identifier: Apache-2.0
#include "slspec/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "slspec/errors.hpp"

namespace slspec {

namespace {

std::string where(std::size_t i) { return "piece " + std::to_string(i) + ": "; }

void check_table(const SampledTable& t, double x0, double x1, std::size_t i) {
  if (t.x.size() < 2 || t.x.size() != t.q.size()) {
    throw InvalidInput(where(i) + "sampled q needs >= 2 (x, q) nodes");
  }
  for (std::size_t k = 1; k < t.x.size(); ++k) {
    if (!(t.x[k] > t.x[k - 1])) throw InvalidInput(where(i) + "table nodes not strictly increasing");
  }
  if (t.x.front() > x0 || t.x.back() < x1) {
    throw InvalidInput(where(i) + "table does not cover the piece");
  }
  for (double v : t.q) {
    if (!std::isfinite(v)) throw InvalidInput(where(i) + "non-finite q value");
  }
}

}  // namespace

double SampledTable::at(double xv) const {
  if (xv <= x.front()) return q.front();
  if (xv >= x.back()) return q.back();
  auto it = std::upper_bound(x.begin(), x.end(), xv);
  const std::size_t k = static_cast<std::size_t>(it - x.begin());
  const double t = (xv - x[k - 1]) / (x[k] - x[k - 1]);
  return q[k - 1] + t * (q[k] - q[k - 1]);
}

double SampledTable::min_on(double lo, double hi) const {
  double m = std::min(at(lo), at(hi));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > lo && x[k] < hi) m = std::min(m, q[k]);
  }
  return m;
}

double SampledTable::max_on(double lo, double hi) const {
  double m = std::max(at(lo), at(hi));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > lo && x[k] < hi) m = std::max(m, q[k]);
  }
  return m;
}

SampledTable SampledTable::slice(double lo, double hi) const {
  SampledTable out;
  out.x.push_back(lo);
  out.q.push_back(at(lo));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > lo && x[k] < hi) {
      out.x.push_back(x[k]);
      out.q.push_back(q[k]);
    }
  }
  out.x.push_back(hi);
  out.q.push_back(at(hi));
  return out;
}

double Piece::q_at(double x) const {
  if (const auto* c = std::get_if<double>(&q)) return *c;
  return std::get<SampledTable>(q).at(x);
}

double Piece::q_min(double lo, double hi) const {
  if (const auto* c = std::get_if<double>(&q)) return *c;
  return std::get<SampledTable>(q).min_on(std::max(lo, x0), std::min(hi, x1));
}

double Piece::q_max(double lo, double hi) const {
  if (const auto* c = std::get_if<double>(&q)) return *c;
  return std::get<SampledTable>(q).max_on(std::max(lo, x0), std::min(hi, x1));
}

PiecewiseCoefficient::PiecewiseCoefficient(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidInput("coefficient needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (!std::isfinite(p.x0) || !std::isfinite(p.x1) || !(p.x0 < p.x1)) {
      throw InvalidInput(where(i) + "requires finite x0 < x1");
    }
    if (!std::isfinite(p.w) || p.w == 0.0) {
      throw InvalidInput(where(i) + "w must be finite and nonzero");
    }
    if (const auto* t = std::get_if<SampledTable>(&p.q)) {
      check_table(*t, p.x0, p.x1, i);
    } else if (!std::isfinite(std::get<double>(p.q))) {
      throw InvalidInput(where(i) + "non-finite q value");
    }
    if (i > 0 && pieces_[i - 1].x1 != p.x0) {
      throw InvalidInput(where(i) + "pieces must tile the interval without gaps or overlaps");
    }
  }
}

std::size_t PiecewiseCoefficient::piece_index(double x) const {
  if (!(x >= a() && x <= b())) throw std::out_of_range("x outside coefficient domain");
  // first piece whose x1 > x; x == b falls back to the last piece
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Piece& p) { return v < p.x1; });
  if (it == pieces_.end()) return pieces_.size() - 1;
  return static_cast<std::size_t>(it - pieces_.begin());
}

std::pair<double, double> PiecewiseCoefficient::evaluate(double x) const {
  const Piece& p = pieces_[piece_index(x)];
  return {p.w, p.q_at(x)};
}

double PiecewiseCoefficient::max_abs_w() const {
  double m = 0.0;
  for (const Piece& p : pieces_) m = std::max(m, std::abs(p.w));
  return m;
}

bool PiecewiseCoefficient::w_constant_sign() const {
  const bool pos = pieces_.front().w > 0.0;
  return std::all_of(pieces_.begin(), pieces_.end(), [pos](const Piece& p) { return (p.w > 0.0) == pos; });
}

ProblemSpec::ProblemSpec(double a, double b, double alpha, double beta, PiecewiseCoefficient coeff)
    : a_(a), b_(b), alpha_(alpha), beta_(beta), coeff_(std::move(coeff)) {
  if (!(a < b)) throw InvalidInput("interval must satisfy a < b");
  if (coeff_.pieces().empty()) throw InvalidInput("empty coefficient");
  if (coeff_.a() != a || coeff_.b() != b) throw InvalidInput("coefficient pieces must tile [a, b] exactly");
  for (double ang : {alpha, beta}) {
    if (!(ang >= 0.0 && ang < std::numbers::pi)) throw InvalidInput("boundary angles must lie in [0, pi)");
  }
}

NormalizedProblem normalize_domain(const ProblemSpec& spec) {
  const double a = spec.a();
  const double b = spec.b();
  if (a == -1.0 && b == 2.0) return {spec, 1.0};

  const double s = (b - a) / 3.0;
  const double s2 = s * s;
  auto map = [&](double x) {
    if (x == a) return -1.0;
    if (x == b) return 2.0;
    return (3.0 * x - (b + 2.0 * a)) / (b - a);
  };

  std::vector<Piece> out;
  for (const Piece& p : spec.coeff().pieces()) {
    Piece np;
    np.x0 = map(p.x0);
    np.x1 = map(p.x1);
    np.w = p.w * s2;
    if (const auto* c = std::get_if<double>(&p.q)) {
      np.q = *c * s2;
    } else {
      SampledTable t = std::get<SampledTable>(p.q);
      for (double& x : t.x) x = (3.0 * x - (b + 2.0 * a)) / (b - a);
      for (double& v : t.q) v *= s2;
      // end nodes must still cover the mapped piece after rounding
      t.x.front() = std::min(t.x.front(), np.x0);
      t.x.back() = std::max(t.x.back(), np.x1);
      np.q = std::move(t);
    }
    out.push_back(std::move(np));
  }
  // y'(x) = Y'(ξ)/s, so the Robin angles transform through tan α → tan α / s.
  auto angle = [s](double ang) {
    if (ang == 0.0) return 0.0;
    double r = std::atan2(std::sin(ang) / s, std::cos(ang));
    if (r >= std::numbers::pi) r -= std::numbers::pi;
    return r;
  };
  return {ProblemSpec(-1.0, 2.0, angle(spec.alpha()), angle(spec.beta()), PiecewiseCoefficient(std::move(out))),
          s2};
}

ProblemSpec one_tp_sign(double q0) {
  std::vector<Piece> pieces{{-1.0, 0.0, -1.0, -q0}, {0.0, 1.0, 1.0, -q0}};
  return ProblemSpec(-1.0, 1.0, 0.0, 0.0, PiecewiseCoefficient(std::move(pieces)));
}

ProblemSpec two_tp(double A, double B, double C, double q0) {
  if (!(A < 0.0 && B > 0.0 && C < 0.0)) {
    throw InvalidInput("two_tp requires A < 0, B > 0, C < 0 (replace lambda by -lambda for the mirrored pattern)");
  }
  std::vector<Piece> pieces{{-1.0, 0.0, A, q0}, {0.0, 1.0, B, q0}, {1.0, 2.0, C, q0}};
  return ProblemSpec(-1.0, 2.0, 0.0, 0.0, PiecewiseCoefficient(std::move(pieces)));
}

ProblemSpec application(const std::vector<PotentialSegment>& q) {
  if (q.empty()) throw InvalidInput("application potential is empty");
  if (q.front().x0 != -1.0 || q.back().x1 != 2.0) throw InvalidInput("application potential must tile [-1, 2]");
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (q[i - 1].x1 != q[i].x0) throw InvalidInput("application potential segments must tile [-1, 2]");
  }
  const double cuts[] = {-1.0, 0.0, 1.0, 2.0};
  const double weights[] = {-1.0, 2.0, -1.0};

  std::vector<Piece> pieces;
  for (int k = 0; k < 3; ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    for (const PotentialSegment& seg : q) {
      const double x0 = std::max(lo, seg.x0);
      const double x1 = std::min(hi, seg.x1);
      if (!(x0 < x1)) continue;
      Piece p{x0, x1, weights[k], 0.0};
      if (const auto* c = std::get_if<double>(&seg.q)) {
        p.q = *c;
      } else {
        p.q = std::get<SampledTable>(seg.q).slice(x0, x1);
      }
      pieces.push_back(std::move(p));
    }
  }
  return ProblemSpec(-1.0, 2.0, 0.0, 0.0, PiecewiseCoefficient(std::move(pieces)));
}

ProblemSpec application(double q0) { return application(std::vector<PotentialSegment>{{-1.0, 2.0, q0}}); }

}  // namespace slspec
