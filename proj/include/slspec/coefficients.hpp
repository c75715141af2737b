// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace slspec {

/// Potential q tabulated at nodes, linearly interpolated in between.
struct SampledTable {
  std::vector<double> x;
  std::vector<double> q;

  [[nodiscard]] double at(double xv) const;
  [[nodiscard]] double min_on(double lo, double hi) const;
  [[nodiscard]] double max_on(double lo, double hi) const;
  /// Restriction to [lo, hi], with interpolated end nodes.
  [[nodiscard]] SampledTable slice(double lo, double hi) const;
};

using Potential = std::variant<double, SampledTable>;

/// One breakpoint-delimited segment of the coefficient pair (w, q).
/// w is constant on the piece; q is constant or sampled.
struct Piece {
  double x0 = 0.0;
  double x1 = 0.0;
  double w = 0.0;
  Potential q = 0.0;

  [[nodiscard]] double length() const { return x1 - x0; }
  [[nodiscard]] bool constant_q() const { return std::holds_alternative<double>(q); }
  [[nodiscard]] double q_at(double x) const;
  /// Exact bounds of q on [lo, hi] ∩ [x0, x1] (linear interpolation attains them at nodes).
  [[nodiscard]] double q_min(double lo, double hi) const;
  [[nodiscard]] double q_max(double lo, double hi) const;
};

/// Pieces tiling [a, b] without gaps: piece i's x1 equals piece i+1's x0 exactly.
class PiecewiseCoefficient {
 public:
  PiecewiseCoefficient() = default;
  explicit PiecewiseCoefficient(std::vector<Piece> pieces);

  [[nodiscard]] std::span<const Piece> pieces() const { return pieces_; }
  [[nodiscard]] double a() const { return pieces_.front().x0; }
  [[nodiscard]] double b() const { return pieces_.back().x1; }

  /// Index of the piece owning x. Interior breakpoints belong to the right-hand piece.
  [[nodiscard]] std::size_t piece_index(double x) const;

  /// (w(x), q(x)). Interior breakpoints take the right-limit value; x = b takes the last piece.
  /// Throws std::out_of_range outside [a, b].
  [[nodiscard]] std::pair<double, double> evaluate(double x) const;

  [[nodiscard]] double max_abs_w() const;
  [[nodiscard]] bool w_constant_sign() const;

 private:
  std::vector<Piece> pieces_;
};

/// Full boundary problem y'' + (λ w + q) y = 0 on [a, b] with
///   y(a) cos α − y'(a) sin α = 0,  y(b) cos β + y'(b) sin β = 0.
class ProblemSpec {
 public:
  ProblemSpec(double a, double b, double alpha, double beta, PiecewiseCoefficient coeff);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] const PiecewiseCoefficient& coeff() const { return coeff_; }
  [[nodiscard]] bool dirichlet() const { return alpha_ == 0.0 && beta_ == 0.0; }

 private:
  double a_;
  double b_;
  double alpha_;
  double beta_;
  PiecewiseCoefficient coeff_;
};

struct NormalizedProblem {
  ProblemSpec spec;
  /// Factor ((b − a)/3)² applied to both w and q.
  double coefficient_scale;
};

/// Maps [a, b] onto [−1, 2] by x → (3x − (b + 2a))/(b − a). The Jacobian is carried into
/// w and q, so eigenvalues are unchanged. Identity on problems already posed on [−1, 2].
[[nodiscard]] NormalizedProblem normalize_domain(const ProblemSpec& spec);

/// A q segment over part of the interval, used to assemble the application problem.
struct PotentialSegment {
  double x0;
  double x1;
  Potential q;
};

/// −y'' + q0 y = λ sgn(x) y on [−1, 1], Dirichlet. Stored in canonical form, i.e. q ≡ −q0.
[[nodiscard]] ProblemSpec one_tp_sign(double q0);

/// Step weight A on [−1,0], B on (0,1], C on (1,2]; q ≡ q0; Dirichlet on [−1, 2].
/// Requires A < 0, B > 0, C < 0.
[[nodiscard]] ProblemSpec two_tp(double A, double B, double C, double q0);

/// Weight (−1, 2, −1) on [−1, 2] with the given potential, Dirichlet.
[[nodiscard]] ProblemSpec application(const std::vector<PotentialSegment>& q);
[[nodiscard]] ProblemSpec application(double q0);

}  // namespace slspec
