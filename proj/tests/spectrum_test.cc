// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "oracle.hpp"
#include "slspec/errors.hpp"
#include "slspec/spectrum.hpp"

namespace slspec {
namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec unit_interval(double beta = 0.0) {
  return ProblemSpec(0.0, 1.0, 0.0, beta, PiecewiseCoefficient({Piece{0.0, 1.0, 1.0, 0.0}}));
}

std::vector<double> real_parts(const ScanResult& s) {
  std::vector<double> out;
  for (const EigenRecord& r : s.records) out.push_back(r.lambda.real());
  return out;
}

TEST(CharacteristicTest, ClassicalClosedForm) {
  const ProblemSpec p = unit_interval();
  EXPECT_NEAR(std::abs(characteristic(p, kPi * kPi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(characteristic(p, 4 * kPi * kPi)), 0.0, 1e-15);
  const cplx d = characteristic(p, 2 * kPi * kPi);
  EXPECT_NEAR(d.real(), std::sin(std::sqrt(2.0) * kPi) / (std::sqrt(2.0) * kPi), 1e-15);
  EXPECT_NEAR(d.real(), -0.216954, 1e-6);
  const cplx z(3.0, -2.0);
  EXPECT_LE(std::abs(characteristic(p, z) - std::sin(std::sqrt(z)) / std::sqrt(z)), 1e-14);
}

TEST(CharacteristicTest, RealOnRealAxisAndConjugateSymmetric) {
  const ProblemSpec p = one_tp_sign(-10.0);
  for (double lam : {-40.0, -3.0, 0.0, 7.5, 55.0}) {
    const cplx d = characteristic(p, lam);
    EXPECT_EQ(d.imag(), 0.0) << lam;
  }
  for (cplx lam : {cplx(2.0, 3.0), cplx(-9.0, 0.25)}) {
    EXPECT_LE(std::abs(characteristic(p, std::conj(lam)) - std::conj(characteristic(p, lam))),
              1e-12 * std::abs(characteristic(p, lam)));
  }
}

TEST(CharacteristicTest, MatchesRk4Oracle) {
  const ProblemSpec p = two_tp(-1.0, 2.0, -0.5, 3.0);
  for (cplx lam : {cplx(4.0), cplx(-12.0, 1.0), cplx(30.0, -2.0)}) {
    const cplx want = oracle::terminal(p, lam, 20000).y;
    EXPECT_LE(std::abs(characteristic(p, lam) - want), 1e-9 * std::max(1.0, std::abs(want))) << lam;
  }
}

TEST(CountZerosTest, ClassicalExamples) {
  const ProblemSpec p = unit_interval();
  EXPECT_EQ(count_zeros(p, 9 * kPi * kPi).count, 2);
  EXPECT_EQ(count_zeros(p, kPi * kPi).count, 0);
  EXPECT_EQ(count_zeros(p, 5.0).count, 0);
  EXPECT_EQ(count_zeros(p, 50.0).count, 2);  // √50/π ≈ 2.25
  EXPECT_EQ(count_zeros(p, 30.0).count, 1);
}

TEST(CountZerosTest, OneTurningPointAgreesWithDenseSampling) {
  const ProblemSpec p = one_tp_sign(-10.0);
  for (double lam : {50.0, -50.0, 3.0, 20.0, -33.0}) {
    EXPECT_EQ(count_zeros(p, lam).count, oracle::sign_change_count(p, lam, 10000)) << lam;
  }
}

TEST(CountZerosTest, ZeroOnBreakpointIsFlagged) {
  // λ = 4π² on [0, 1] split at 1/2: the only interior zero sits on the breakpoint.
  const ProblemSpec p(0.0, 1.0, 0.0, 0.0, PiecewiseCoefficient({Piece{0.0, 0.5, 1.0, 0.0}, Piece{0.5, 1.0, 1.0, 0.0}}));
  const ZeroCount z = count_zeros(p, 4 * kPi * kPi);
  EXPECT_EQ(z.count, 1);
  EXPECT_TRUE(z.breakpoint_zero);
}

TEST(RealScanTest, ClassicalWindow) {
  const ScanResult s = find_real_eigenvalues(unit_interval(), {1.0, 100.0});
  ASSERT_EQ(s.records.size(), 3u);
  for (int n = 1; n <= 3; ++n) {
    const EigenRecord& r = s.records[n - 1];
    EXPECT_NEAR(r.lambda.real(), n * n * kPi * kPi, 1e-9 * n * n * kPi * kPi);
    EXPECT_EQ(r.lambda.imag(), 0.0);
    EXPECT_EQ(r.zeros_in_ab, n - 1);
    EXPECT_GT(r.weighted_norm, 0.0);
    EXPECT_FALSE(r.double_root);
  }
}

TEST(RealScanTest, RobinEndpoint) {
  // y(0) = 0, y'(1) = 0: λ = ((n + ½)π)²
  const ScanResult s = find_real_eigenvalues(unit_interval(kPi / 2), {0.0, 250.0});
  ASSERT_EQ(s.records.size(), 5u);
  for (int n = 0; n < 5; ++n) {
    const double want = std::pow((n + 0.5) * kPi, 2);
    EXPECT_NEAR(s.records[n].lambda.real(), want, 1e-9 * want);
    EXPECT_EQ(s.records[n].zeros_in_ab, n);
  }
}

TEST(RealScanTest, RightDefiniteCountsStepByOne) {
  const ProblemSpec p(0.0, 2.0, 0.4, 1.1,
                      PiecewiseCoefficient({Piece{0.0, 0.7, 2.0, 1.0}, Piece{0.7, 2.0, 0.5, -3.0}}));
  const ScanResult s = find_real_eigenvalues(p, {-20.0, 400.0});
  ASSERT_GE(s.records.size(), 5u);
  for (std::size_t i = 1; i < s.records.size(); ++i) {
    EXPECT_EQ(s.records[i].zeros_in_ab, s.records[i - 1].zeros_in_ab + 1);
  }
}

TEST(RealScanTest, OneTurningPointMatchesShootingOracle) {
  const ProblemSpec p = one_tp_sign(-10.0);
  const ScanResult s = find_real_eigenvalues(p, {-60.0, 60.0});
  const std::vector<double> want = oracle::shooting_eigenvalues(p, -60.0, 60.0, 2400, 4000);
  const std::vector<double> got = real_parts(s);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-7 * std::max(1.0, std::abs(want[i])));
}

TEST(RealScanTest, OneTurningPointSpectrumIsSymmetric) {
  const ScanResult s = find_real_eigenvalues(one_tp_sign(-10.0), {-60.0, 60.0});
  const std::vector<double> v = real_parts(s);
  ASSERT_FALSE(v.empty());
  ASSERT_EQ(v.size() % 2, 0u);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mirror = -v[v.size() - 1 - i];
    EXPECT_NEAR(v[i], mirror, 1e-9 * std::max(1.0, std::abs(v[i])));
  }
}

TEST(RealScanTest, TwoTurningPointsSelfConsistent) {
  const double tol = 1e-9;
  const ProblemSpec p = two_tp(-1.0, 1.0, -1.0, 0.0);
  ScanOptions opts;
  opts.tol = tol;
  const ScanResult s = find_real_eigenvalues(p, {-100.0, 100.0}, opts);
  ASSERT_FALSE(s.records.empty());
  for (const EigenRecord& r : s.records) {
    // D varies on the scale of y'(b); judge the root against the slope there
    const double lam = r.lambda.real();
    const double h = tol * std::max(1.0, std::abs(lam));
    const double slope = std::abs(characteristic(p, lam + h) - characteristic(p, lam - h)) / (2 * h);
    const double y_b = std::abs(oracle::terminal(p, lam, 20000).y);
    EXPECT_LE(y_b, 10 * tol * std::max(1.0, slope * std::max(1.0, std::abs(lam)))) << lam;
  }
}

// Both end regions are evanescent here, so a one-sided sweep at an approximate eigenvalue picks up
// the growing mode near b and gets the norm sign and the zero count wrong.
TEST(RealScanTest, EvanescentEndsKeepCountsAndNormSigns) {
  const ProblemSpec p = two_tp(-1.80152, 1.08851, -2.82137, -12.1282);
  const ScanResult s = find_real_eigenvalues(p, {100.0, 300.0});
  ASSERT_EQ(s.records.size(), 3u);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    EXPECT_GT(s.records[i].weighted_norm, 0.0) << s.records[i].lambda.real();
    if (i > 0) EXPECT_EQ(s.records[i].zeros_in_ab, s.records[i - 1].zeros_in_ab + 1);
  }
}

TEST(RealScanTest, GridRefinementKeepsTheSameEigenvalues) {
  for (const ProblemSpec& p : {one_tp_sign(-10.0), two_tp(-1.0, 2.0, -0.7, -4.0)}) {
    ScanOptions coarse;
    ScanOptions fine;
    fine.grid_factor = 0.5;
    const std::vector<double> a = real_parts(find_real_eigenvalues(p, {-80.0, 80.0}, coarse));
    const std::vector<double> b = real_parts(find_real_eigenvalues(p, {-80.0, 80.0}, fine));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-8 * std::max(1.0, std::abs(a[i])));
  }
}

TEST(RealScanTest, ThreadCountDoesNotChangeResults) {
  const ProblemSpec p = two_tp(-1.0, 2.0, -0.7, -4.0);
  ScanOptions one;
  one.threads = 1;
  ScanOptions four;
  four.threads = 4;
  const ScanResult a = find_real_eigenvalues(p, {-80.0, 80.0}, one);
  const ScanResult b = find_real_eigenvalues(p, {-80.0, 80.0}, four);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].lambda, b.records[i].lambda);
    EXPECT_EQ(a.records[i].zeros_in_ab, b.records[i].zeros_in_ab);
  }
}

TEST(RealScanTest, RejectsBadInput) {
  EXPECT_THROW((void)find_real_eigenvalues(unit_interval(), {5.0, 5.0}), InvalidInput);
  ScanOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW((void)find_real_eigenvalues(unit_interval(), {0.0, 5.0}, bad), InvalidInput);
}

TEST(RealScanTest, EigenvalueOnWindowEdgeWarns) {
  const ScanResult s = find_real_eigenvalues(unit_interval(), {1.0, kPi * kPi});
  EXPECT_FALSE(s.warnings.empty());
}

TEST(EmpiricalIndexTest, OneTurningPointHasPairedCounts) {
  const ScanResult s = find_real_eigenvalues(one_tp_sign(-10.0), {-60.0, 60.0});
  ASSERT_TRUE(s.n_R_empirical.has_value());
  const int n_r = *s.n_R_empirical;
  std::map<int, int> counts;
  for (const EigenRecord& r : s.records) ++counts[r.zeros_in_ab];
  for (const auto& [n, k] : counts) {
    EXPECT_GE(n, n_r);
    EXPECT_GE(k, 2) << n;
  }
  // four eigenvalues share one count, so "precisely two" is not visible in this window
  EXPECT_FALSE(s.n_H_empirical.has_value());
}

TEST(EmpiricalIndexTest, RightDefiniteHasNoPairs) {
  const ScanResult s = find_real_eigenvalues(unit_interval(), {1.0, 400.0});
  EXPECT_FALSE(s.n_R_empirical.has_value());
}

TEST(EmpiricalIndexTest, SyntheticRecords) {
  auto rec = [](double lam, int n) {
    EigenRecord r;
    r.lambda = lam;
    r.zeros_in_ab = n;
    return r;
  };
  EXPECT_EQ(empirical_richardson_index({rec(-9, 2), rec(-4, 1), rec(4, 1), rec(9, 2)}), 1);
  EXPECT_EQ(empirical_haupt_index({rec(-9, 2), rec(-4, 1), rec(4, 1), rec(9, 2)}), 1);
  EXPECT_FALSE(empirical_richardson_index({rec(-9, 2), rec(4, 1), rec(9, 2)}).has_value());
  EXPECT_FALSE(empirical_richardson_index({}).has_value());
}

TEST(ComplexSearchTest, RightDefiniteHasNoNonrealEigenvalues) {
  EXPECT_TRUE(find_complex_eigenvalues(unit_interval(), {{1.0, 50.0}, {0.1, 10.0}}).empty());
}

TEST(ComplexSearchTest, NonrealPairIsClosedUnderConjugation) {
  const ProblemSpec p = one_tp_sign(-20.0);
  const std::vector<EigenRecord> roots = find_complex_eigenvalues(p, {{-20.0, 20.0}, {-20.0, 20.0}});
  int nonreal = 0;
  for (const EigenRecord& r : roots) {
    if (r.lambda.imag() == 0.0) continue;
    ++nonreal;
    const auto mirror = std::find_if(roots.begin(), roots.end(), [&](const EigenRecord& o) {
      return o.lambda == std::conj(r.lambda);
    });
    EXPECT_NE(mirror, roots.end()) << r.lambda;
    EXPECT_LT(std::abs(characteristic(p, r.lambda)), 1e-8) << r.lambda;
    // ±λ symmetry of this problem holds for complex eigenvalues as well
    EXPECT_LT(std::abs(characteristic(p, -r.lambda)), 1e-8) << r.lambda;
  }
  EXPECT_GE(nonreal, 2);
}

TEST(ComplexSearchTest, RootsAgreeWithRk4) {
  const ProblemSpec p = one_tp_sign(-20.0);
  for (const EigenRecord& r : find_complex_eigenvalues(p, {{-20.0, 20.0}, {1e-3, 20.0}})) {
    const cplx y_b = oracle::terminal(p, r.lambda, 20000).y;
    EXPECT_LT(std::abs(y_b), 1e-7) << r.lambda;
  }
}

TEST(ComplexSearchTest, WindingParityMatchesRealCount) {
  // Nonreal roots come in conjugate pairs, so winding − (real roots inside) is even.
  for (const ProblemSpec& p : {one_tp_sign(-20.0), two_tp(-1.0, 2.0, -1.0, -6.0)}) {
    for (double half : {5.0, 11.0, 17.0}) {
      const Rect rect{{-half - 0.123, half + 0.377}, {-half, half}};
      const int winding = winding_number(p, rect);
      const ScanResult s = find_real_eigenvalues(p, rect.re);
      EXPECT_EQ((winding - static_cast<int>(s.records.size())) % 2, 0) << half;
    }
  }
}

TEST(ComplexSearchTest, WindingCountsClassicalEigenvalues) {
  EXPECT_EQ(winding_number(unit_interval(), {{5.0, 100.0}, {-1.0, 1.0}}), 3);
  EXPECT_EQ(winding_number(unit_interval(), {{15.0, 30.0}, {-1.0, 1.0}}), 0);
}

TEST(ComplexSearchTest, RejectsFlatRectangle) {
  EXPECT_THROW((void)find_complex_eigenvalues(unit_interval(), {{1.0, 5.0}, {1.0, 1.0}}), InvalidInput);
}

}  // namespace
}  // namespace slspec
