// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "slspec/entire.hpp"
#include "slspec/errors.hpp"
#include "slspec/propagator.hpp"

namespace slspec {
namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec unit_interval() { return ProblemSpec(0.0, 1.0, 0.0, 0.0, PiecewiseCoefficient({Piece{0.0, 1.0, 1.0, 0.0}})); }

// Sampled potential with a kink at 0.4 and a breakpoint of w at 0.
ProblemSpec sampled_problem() {
  return ProblemSpec(-1.0, 1.0, 0.3, 1.2,
                     PiecewiseCoefficient({Piece{-1.0, 0.0, -1.0, SampledTable{{-1.0, -0.2, 0.0}, {2.0, -1.0, 0.5}}},
                                           Piece{0.0, 1.0, 1.5, SampledTable{{0.0, 0.4, 1.0}, {0.5, 3.0, -2.0}}}}));
}

void expect_close(cplx got, cplx want, double tol) {
  EXPECT_LE(std::abs(got - want), tol * std::max(1.0, std::abs(want))) << got << " vs " << want;
}

TEST(PieceTransferTest, HalfPeriodRotation) {
  const TransferMatrix t = piece_transfer(kPi * kPi, 1.0);
  expect_close(t.m11, -1.0, 1e-15);
  expect_close(t.m12, 0.0, 1e-15);
  expect_close(t.m21, 0.0, 1e-14);
  expect_close(t.m22, -1.0, 1e-15);
}

TEST(PieceTransferTest, LinearAtZero) {
  const TransferMatrix t = piece_transfer(0.0, 2.0);
  EXPECT_EQ(t.m11, cplx(1.0));
  EXPECT_EQ(t.m12, cplx(2.0));
  EXPECT_EQ(t.m21, cplx(0.0));
  EXPECT_EQ(t.m22, cplx(1.0));
}

TEST(PieceTransferTest, Hyperbolic) {
  const TransferMatrix t = piece_transfer(-1.0, 1.0);
  expect_close(t.m11, std::cosh(1.0), 1e-15);
  expect_close(t.m12, std::sinh(1.0), 1e-15);
  expect_close(t.m21, std::sinh(1.0), 1e-15);
  expect_close(t.m22, std::cosh(1.0), 1e-15);
  EXPECT_NEAR(t.m11.real(), 1.54308, 1e-5);
  EXPECT_NEAR(t.m12.real(), 1.17520, 1e-5);
}

TEST(PieceTransferTest, RejectsNonpositiveLength) {
  EXPECT_THROW((void)piece_transfer(1.0, 0.0), InvalidInput);
  EXPECT_THROW((void)piece_transfer(1.0, -1.0), InvalidInput);
}

// The series branch near z = 0 joins the trigonometric branch continuously.
TEST(PieceTransferTest, SeriesBranchIsContinuous) {
  for (double len : {0.5, 1.0, 3.0}) {
    const double edge = 1e-4 / (len * len);
    for (cplx z : {cplx(edge * 0.999), cplx(edge * 1.001), cplx(-edge * 0.999), cplx(-edge * 1.001),
                   cplx(0.0, edge * 0.999), cplx(0.0, edge * 1.001)}) {
      const TransferMatrix t = piece_transfer(z, len);
      const cplx k = std::sqrt(z);
      expect_close(t.m11, std::cos(k * len), 1e-14);
      expect_close(t.m12, std::sin(k * len) / k, 1e-12);
      expect_close(t.m21, -k * std::sin(k * len), 1e-12);
    }
  }
}

TEST(PieceTransferTest, ComplexArgumentMatchesRk4) {
  const PiecewiseCoefficient c({Piece{0.0, 1.3, 1.0, 0.0}});
  for (cplx z : {cplx(3.0, 2.0), cplx(-7.0, 0.5), cplx(40.0, -10.0)}) {
    const TransferMatrix t = piece_transfer(z, 1.3);
    const oracle::State s = oracle::rk4(c, z, {1.0, 0.0}, 1.3, 20000);
    expect_close(t.m11, s.y, 1e-10);
    expect_close(t.m21, s.yp, 1e-10);
  }
}

TEST(PropagateTest, InitialStateRealizesAlpha) {
  const ProblemSpec p(0.0, 1.0, 0.7, 0.0, PiecewiseCoefficient({Piece{0.0, 1.0, 1.0, 0.0}}));
  const StateVector s = initial_state(p);
  EXPECT_DOUBLE_EQ(s.y.real(), std::sin(0.7));
  EXPECT_DOUBLE_EQ(s.yp.real(), std::cos(0.7));
  // y(a) cos α − y'(a) sin α = 0
  EXPECT_NEAR((s.y * std::cos(0.7) - s.yp * std::sin(0.7)).real(), 0.0, 1e-16);
  const StateVector d = initial_state(unit_interval());
  EXPECT_EQ(d.y, cplx(0.0));
  EXPECT_EQ(d.yp, cplx(1.0));
}

TEST(PropagateTest, ClassicalSine) {
  const Propagation p = propagate(unit_interval(), kPi * kPi);
  EXPECT_NEAR(std::abs(p.terminal.y), 0.0, 1e-15);
  EXPECT_NEAR(p.terminal.yp.real(), -1.0, 1e-14);
}

TEST(PropagateTest, OneTurningPointAtZeroComposesTwoOscillatoryPieces) {
  const ProblemSpec p = one_tp_sign(-10.0);
  // λ = 0: q = +10 on both pieces, so y'' + 10 y = 0
  const TransferMatrix t = piece_transfer(10.0, 1.0) * piece_transfer(10.0, 1.0);
  const Propagation got = propagate(p, 0.0);
  expect_close(got.terminal.y, t.m12, 1e-14);
  expect_close(got.terminal.yp, t.m22, 1e-14);
  const double k = std::sqrt(10.0);
  expect_close(got.terminal.y, std::sin(2.0 * k) / k, 1e-13);
  expect_close(got.terminal.yp, std::cos(2.0 * k), 1e-13);
}

TEST(PropagateTest, RealLambdaGivesRealTerminalState) {
  for (double lam : {-35.0, 0.3, 12.0, 80.0}) {
    const Propagation p = propagate(sampled_problem(), lam);
    EXPECT_LE(std::abs(p.terminal.y.imag()), 1e-12 * std::max(1.0, std::abs(p.terminal.y)));
    EXPECT_LE(std::abs(p.terminal.yp.imag()), 1e-12 * std::max(1.0, std::abs(p.terminal.yp)));
  }
}

TEST(PropagateTest, ConjugateSymmetry) {
  for (cplx lam : {cplx(3.0, 4.0), cplx(-20.0, 1.0), cplx(0.5, -9.0)}) {
    for (const ProblemSpec& p : {two_tp(-1.0, 2.0, -0.5, 1.0), sampled_problem()}) {
      const StateVector s = propagate(p, lam).terminal;
      const StateVector c = propagate(p, std::conj(lam)).terminal;
      expect_close(c.y, std::conj(s.y), 1e-12);
      expect_close(c.yp, std::conj(s.yp), 1e-12);
    }
  }
}

TEST(PropagateTest, CompositionAcrossBreakpoints) {
  const ProblemSpec p = two_tp(-1.0, 2.0, -1.0, 0.5);
  for (cplx lam : {cplx(7.0, 0.0), cplx(-3.0, 2.0), cplx(25.0, -1.0)}) {
    const TransferMatrix whole = propagate(p, lam).matrix;
    for (double c : {0.0, 1.0}) {
      const TransferMatrix split = transfer_between(p, lam, c, 2.0) * transfer_between(p, lam, -1.0, c);
      for (auto [x, y] : {std::pair{whole.m11, split.m11}, {whole.m12, split.m12}, {whole.m21, split.m21},
                          {whole.m22, split.m22}}) {
        EXPECT_LE(std::abs(x - y), 1e-10 * std::max(1.0, std::abs(x)));
      }
    }
  }
}

// det T = 1 holds up to cancellation in m11 m22 − m12 m21, which grows like eps ‖T‖².
TEST(PropagateTest, DeterminantIsOneUpToConditioning) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 200; ++i) {
    const cplx lam(40.0 * u(rng), 40.0 * u(rng));
    const ProblemSpec p = i % 2 ? two_tp(-1.0, 2.0, -1.0, 5.0 * u(rng)) : one_tp_sign(10.0 * u(rng));
    const TransferMatrix t = propagate(p, lam).matrix;
    const double scale = std::norm(t.m11) + std::norm(t.m12) + std::norm(t.m21) + std::norm(t.m22);
    EXPECT_LE(std::abs(t.det() - 1.0), 64.0 * eps * std::max(1.0, scale)) << lam;
  }
}

TEST(PropagateTest, DeterminantIsOneOnSmallLambda) {
  for (cplx lam : {cplx(0.0), cplx(1.0, 1.0), cplx(-4.0, 2.0), cplx(9.0, -3.0)}) {
    for (const ProblemSpec& p : {one_tp_sign(-1.0), two_tp(-1.0, 2.0, -1.0, 0.5)}) {
      EXPECT_LE(std::abs(propagate(p, lam).matrix.det() - 1.0), 1e-10) << lam;
    }
  }
}

TEST(PropagateTest, ClosedFormAgreesWithAdaptive) {
  PropagateOptions adaptive;
  adaptive.force_adaptive = true;
  for (cplx lam : {cplx(-50.0), cplx(5.0), cplx(60.0), cplx(12.0, 7.0)}) {
    for (const ProblemSpec& p : {one_tp_sign(-10.0), two_tp(-2.0, 1.0, -0.5, 3.0)}) {
      const StateVector exact = propagate(p, lam).terminal;
      const StateVector num = propagate(p, lam, adaptive).terminal;
      expect_close(num.y, exact.y, 1e-8);
      expect_close(num.yp, exact.yp, 1e-8);
    }
  }
}

TEST(PropagateTest, SampledPotentialMatchesRk4) {
  const ProblemSpec p = sampled_problem();
  for (cplx lam : {cplx(-30.0), cplx(4.0), cplx(45.0), cplx(6.0, -8.0)}) {
    const StateVector s = propagate(p, lam).terminal;
    const oracle::State o = oracle::terminal(p, lam, 20000);
    expect_close(s.y, o.y, 1e-8);
    expect_close(s.yp, o.yp, 1e-8);
  }
}

TEST(SolutionAtTest, ClassicalMidpoint) {
  const std::vector<double> xs{0.5};
  const auto s = solution_at(unit_interval(), kPi * kPi, xs);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0].y.real(), 1.0 / kPi, 1e-15);
  EXPECT_EQ(s[0].x, 0.5);
}

TEST(SolutionAtTest, StartPointIsInitialState) {
  const std::vector<double> xs{-1.0};
  const auto s = solution_at(sampled_problem(), 3.0, xs);
  EXPECT_EQ(s[0].y, cplx(std::sin(0.3)));
  EXPECT_EQ(s[0].yp, cplx(std::cos(0.3)));
}

TEST(SolutionAtTest, DenseOutputMatchesRk4) {
  const ProblemSpec p = one_tp_sign(-10.0);
  std::vector<double> xs;
  for (int i = 0; i <= 100; ++i) xs.push_back(-1.0 + 0.02 * i);
  xs.back() = 1.0;
  const auto s = solution_at(p, 8.0, xs);
  std::vector<oracle::State> ref;
  oracle::rk4(p.coeff(), 8.0, {0.0, 1.0}, 1.0, 50000, [&](double, const oracle::State& v) { ref.push_back(v); });
  // oracle grid: 50000 steps per unit length; every 1000th node is a dense-output point
  for (std::size_t i = 0; i < xs.size(); ++i) {
    expect_close(s[i].y, ref[i * 1000].y, 1e-8);
    expect_close(s[i].yp, ref[i * 1000].yp, 1e-8);
  }
}

TEST(SolutionAtTest, RepropagationReproducesTerminal) {
  const ProblemSpec p = sampled_problem();
  const cplx lam(9.0, 2.0);
  const std::vector<double> xs{-0.7, -0.2, 0.0, 0.55, 0.9};
  const StateVector end = propagate(p, lam).terminal;
  for (const StateVector& s : solution_at(p, lam, xs)) {
    const StateVector again = advance(p, lam, s, 1.0);
    expect_close(again.y, end.y, 1e-9);
    expect_close(again.yp, end.yp, 1e-9);
  }
}

TEST(SolutionAtTest, RejectsPointsOutsideOrUnsorted) {
  const std::vector<double> outside{0.5, 1.5};
  EXPECT_THROW((void)solution_at(unit_interval(), 1.0, outside), InvalidInput);
  const std::vector<double> unsorted{0.5, 0.2};
  EXPECT_THROW((void)solution_at(unit_interval(), 1.0, unsorted), InvalidInput);
}

TEST(SweepTest, ZeroCountMatchesSignChangeOracle) {
  for (const ProblemSpec& p : {one_tp_sign(-10.0), two_tp(-1.0, 2.0, -1.0, 0.0), sampled_problem()}) {
    for (double lam : {-120.0, -45.5, -3.0, 0.0, 2.5, 50.0, 133.3}) {
      const RealSweep s = sweep_real(p, lam);
      const int zeros_in_ab = s.zeros - (s.y == 0.0 ? 1 : 0);
      EXPECT_EQ(zeros_in_ab, oracle::sign_change_count(p, lam)) << lam;
    }
  }
}

TEST(SweepTest, WeightedNormMatchesSimpson) {
  for (const ProblemSpec& p : {one_tp_sign(-10.0), two_tp(-0.7, 1.3, -2.0, 4.0), sampled_problem()}) {
    for (double lam : {-25.0, 0.0, 20.0}) {
      const double got = sweep_real(p, lam).weighted_norm;
      const double want = oracle::weighted_norm(p, lam);
      EXPECT_NEAR(got, want, 1e-8 * std::max(1.0, std::abs(want))) << lam;
    }
  }
}

TEST(SweepTest, SolutionZerosLieOnSolution) {
  const ProblemSpec p = two_tp(-1.0, 2.0, -1.0, 0.0);
  const std::vector<double> zs = solution_zeros(p, -80.0);
  ASSERT_EQ(static_cast<int>(zs.size()), oracle::sign_change_count(p, -80.0));
  for (const StateVector& s : solution_at(p, -80.0, zs)) EXPECT_LE(std::abs(s.y), 1e-12 * std::abs(s.yp));
}

TEST(EntireFunctionTest, SquareIntegralMatchesSimpson) {
  for (double z : {-400.0, -3.0, -1e-6, 0.0, 1e-6, 5.0, 900.0}) {
    const double y0 = 0.3;
    const double yp0 = -1.1;
    const double got = entire::square_integral(z, 1.7, y0, yp0);
    auto y = [&](double x) {
      const double v = y0 * entire::cosine(z, x) + yp0 * entire::sine(z, x);
      return v * v;
    };
    const double want = oracle::simpson(y, 0.0, 1.7, 200000);
    EXPECT_NEAR(got, want, 1e-9 * std::max(1.0, want)) << z;
  }
}

}  // namespace
}  // namespace slspec
