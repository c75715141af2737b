// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slspec/coefficients.hpp"
#include "slspec/propagator.hpp"

namespace slspec {

enum class CertificateKind { one_tp, prop3, prop4, prop5, application };
enum class BoundDirection { upper_on_lambda_plus, lower_on_lambda_minus };

[[nodiscard]] const char* to_string(CertificateKind k);
[[nodiscard]] const char* to_string(BoundDirection d);

struct TrailEntry {
  std::string condition;
  double value = 0.0;
  bool pass = false;
};

/// A bound on λ⁺ (or λ⁻) together with every hypothesis that was checked to obtain it.
struct BoundCertificate {
  CertificateKind kind = CertificateKind::one_tp;
  double bound = 0.0;
  BoundDirection direction = BoundDirection::upper_on_lambda_plus;
  std::vector<TrailEntry> hypothesis_trail;
  /// True iff every trail entry passed.
  bool valid = false;

  void check(std::string condition, double value, bool pass);
};

enum class Side { right, left };

struct LemmaCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ∫ y² < y(end)²/2 for the increasing solution of y'' = −μ y vanishing at the start of the unit
/// interval ([0,1] for right, [−1,0] for left). Throws HypothesisViolation unless μ < π²/4.
[[nodiscard]] LemmaCheck verify_lemma_upper(double mu, Side side);

/// ∫ y² > y(0)²/2 for the solution of y'' = −μ y vanishing at the far end (y(1) = 0 for right,
/// y(−1) = 0 for left), normalized to amplitude 1. Requires μ > 0 and the sign condition
/// sin 2√μ < 0; with non_strict the sign condition relaxes to ≤ 0 and the conclusion to ≥.
/// Throws HypothesisViolation when a requirement fails.
[[nodiscard]] LemmaCheck verify_lemma_lower(double mu, Side side, bool non_strict = false);

struct OneTurningPointBounds {
  BoundCertificate upper;  // λ⁺ ≤ |q0| − π²/4
  BoundCertificate lower;  // λ⁻ ≥ −|q0| + π²/4
};

/// Bounds for one_tp_sign(q0). Throws HypothesisViolation unless q0 < −π²/4.
[[nodiscard]] OneTurningPointBounds bound_one_turning_point(double q0);

enum class WitnessMethod { principal_solution, comparison };
[[nodiscard]] const char* to_string(WitnessMethod m);

struct DisconjugacyWitness {
  double c = 0.0;
  double d = 0.0;
  double mu = 0.0;
  /// Minimum of the witness solution over [c, d] (sampled on a breakpoint-refined grid).
  double min_u = 0.0;
  WitnessMethod method = WitnessMethod::principal_solution;
};

/// A solution of u'' + (μ w + q) u = 0 that is positive on [c, d], or nothing when none was found.
/// The principal solution starts at c − δ, δ = 1e−6 (d − c); coefficients extend constantly
/// beyond [a, b]. When μ w + q ≤ 0 on [c, d] the convex solution u(c) = 1, u'(c) = 0 serves.
/// Throws InvalidInput unless a ≤ c < d ≤ b.
[[nodiscard]] std::optional<DisconjugacyWitness> disconjugate_on(const PiecewiseCoefficient& coeff, double mu,
                                                                 double c, double d,
                                                                 const PropagateOptions& opts = {});

enum class Prop3Variant {
  /// All μ_j < λ; bounds λ⁺ from above by λ.
  upper,
  /// All μ_j > λ; bounds λ⁻ from below by λ.
  lower,
};

struct Prop3Options {
  Prop3Variant variant = Prop3Variant::upper;
  /// Eigenvalue acceptance: |sin θ(b)| below this, θ the Prüfer angle of the solution.
  double eigen_tol = 1e-6;
  PropagateOptions propagate{};
};

/// Zeros a = x_0 < … < x_k = b of the eigenfunction at λ, one μ_j per gap. Requires Dirichlet
/// conditions. Throws InvalidInput when λ is not an eigenvalue or the μ count is wrong, and
/// HypothesisViolation when some μ_j is on the wrong side of λ.
[[nodiscard]] BoundCertificate certify_prop3(const ProblemSpec& spec, double lambda, const std::vector<double>& mus,
                                             const Prop3Options& opts = {});

/// Interior zeros of the eigenfunction at λ used by certify_prop3, endpoints included.
[[nodiscard]] std::vector<double> eigenfunction_nodes(const ProblemSpec& spec, double lambda,
                                                      const PropagateOptions& opts = {});

/// Per-gap μ search: tries λ ∓ δ for geometrically growing δ and keeps the first value with a
/// disconjugacy witness on the gap. Gaps without one get the last value tried.
[[nodiscard]] std::vector<double> suggest_gap_mus(const ProblemSpec& spec, double lambda,
                                                  Prop3Variant variant = Prop3Variant::upper,
                                                  const PropagateOptions& opts = {});

/// Requires Dirichlet conditions, a < c < d < e < b and w > 0 exactly on (c, d) (InvalidInput
/// otherwise); λ* > μ (HypothesisViolation otherwise).
[[nodiscard]] BoundCertificate certify_prop4(const ProblemSpec& spec, double mu, double lambda_star, double c, double d,
                                             double e, const PropagateOptions& opts = {});

/// Sign, sup and inf conditions on μ w + q and λ* w + q; same preconditions as certify_prop4.
[[nodiscard]] BoundCertificate certify_prop5(const ProblemSpec& spec, double mu, double lambda_star, double c, double d,
                                             double e);

/// λ⁺ < 21M/2 for the weight (−1, 2, −1) on [−1, 2]. Throws InvalidInput for any other weight and
/// HypothesisViolation unless M > π²/20.
[[nodiscard]] BoundCertificate certify_application(double M, const ProblemSpec& spec);
[[nodiscard]] BoundCertificate certify_application(double M, const std::vector<PotentialSegment>& q);

enum class Definiteness { polar, orthogonal, nondefinite };
[[nodiscard]] const char* to_string(Definiteness d);

struct FormWitness {
  /// "R" for ∫ w y², "L" for ∫ y'² − ∫ q y² plus boundary terms.
  std::string form;
  std::string function;
  double value = 0.0;
};

struct Classification {
  Definiteness kind = Definiteness::nondefinite;
  bool r_definite = false;
  bool l_definite = false;
  /// Common sign of w when r_definite, 0 otherwise.
  int w_sign = 0;
  /// Lowest eigenvalue of −y'' − q y = Λ y under the problem's boundary conditions.
  double lambda0 = 0.0;
  std::vector<FormWitness> witnesses;
};

/// Orthogonal is reported first when w has constant sign (l_definite still set when Λ₀ > 0).
/// The L form is never negative definite: high-frequency trial functions make it positive.
[[nodiscard]] Classification classify_definiteness(const ProblemSpec& spec, const PropagateOptions& opts = {});

}  // namespace slspec
