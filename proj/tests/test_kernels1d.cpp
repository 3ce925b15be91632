#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <thread>

#include "fdlap/kernels1d.hpp"

using namespace fdlap;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Partial sum over 0 < |m| <= M plus the midpoint of the integral bracket
// for sum_{|m| > M} c_s |m|^{-1-2s}.
double sigma_by_summation(double s, long M) {
  CompensatedSum acc;
  for (long m = M; m >= 1; --m) acc += 2.0 * kernel_ks(s, m);
  const double c = c_s(s);
  const double lo = 2.0 * c * std::pow(M + 1.0, -2.0 * s) / (2.0 * s);
  const double hi = 2.0 * c * std::pow(double(M), -2.0 * s) / (2.0 * s);
  return acc.value() + 0.5 * (lo + hi);
}

}  // namespace

TEST(Constants, HandValues) {
  EXPECT_NEAR(c_s(0.5), 1.0 / pi, 1e-15);
  EXPECT_GT(c_s(0.25), 0.0);
  EXPECT_GT(c_s(0.75), 0.0);
  for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    // |Gamma(-s)| from Boost directly
    const double via_abs = std::pow(4.0, s) * boost::math::tgamma(0.5 + s) /
                           (std::sqrt(pi) * std::abs(boost::math::tgamma(-s)));
    EXPECT_LE(rel(c_s(s), via_abs), 1e-13) << s;
  }
  EXPECT_THROW(c_s(0.0), DomainError);
  EXPECT_THROW(c_s(1.0), DomainError);
  EXPECT_THROW(c_minus_s(0.5), DomainError);
}

TEST(KernelKs, HandValues) {
  EXPECT_EQ(kernel_ks(0.3, 0), 0.0);
  EXPECT_LE(rel(kernel_ks(0.5, 1), 4.0 / (3.0 * pi)), 1e-14);
  EXPECT_LE(rel(kernel_ks_oracle(0.5, 1), 4.0 / (3.0 * pi)), 1e-8);
  EXPECT_EQ(kernel_ks(0.3, 17), kernel_ks(0.3, -17));
  EXPECT_THROW(kernel_ks(1.5, 1), DomainError);
  EXPECT_THROW(kernel_ks_oracle(0.5, 0), DomainError);
}

TEST(KernelKs, OracleAgreementGrid) {
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (long m = 1; m <= 64; ++m)
      EXPECT_LE(rel(kernel_ks_oracle(s, m), kernel_ks(s, m)), 1e-8) << s << " " << m;
  EXPECT_LE(rel(kernel_ks_oracle(0.3, 17), kernel_ks(0.3, 17)), 1e-8);
}

TEST(KernelKs, DecayBound) {
  const double s = 0.9;
  const double v = kernel_ks_oracle(s, 50);
  EXPECT_GT(v, 0.0);
  EXPECT_LE(v, kernel_bound_constant(s) * std::pow(50.0, -1.0 - 2.0 * s));
  for (double t : {0.1, 0.5, 0.9})
    for (long m = 1; m <= 5000; m += 7)
      EXPECT_LE(kernel_ks(t, m), kernel_bound_constant(t) * std::pow(double(m), -1.0 - 2.0 * t) * (1 + 1e-14));
}

TEST(KernelKs, StrictlyDecreasingAndPositive) {
  for (double s : {0.05, 0.5, 0.95}) {
    KernelTable t(SignedOrder(s), 3000);
    for (long m = 1; m < 3000; ++m) {
      EXPECT_GT(t[m], 0.0);
      EXPECT_GT(t[m], t[m + 1]);
    }
  }
}

TEST(KernelKs, SecondOrderEstimateDoesNotGrow) {
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double c = c_s(s);
    auto scaled = [&](long m) {
      const double x = double(m);
      return std::abs(kernel_ks(s, m) - c * std::pow(x, -1.0 - 2.0 * s)) * std::pow(x, 2.0 + 2.0 * s);
    };
    const double at10 = scaled(10);
    for (long m = 10; m <= 10000; m += 3) EXPECT_LE(scaled(m), at10 * (1 + 1e-9)) << s << " " << m;
  }
}

TEST(SigmaS, ClosedAndSummed) {
  EXPECT_LE(rel(sigma_s(0.5), 4.0 / pi), 1e-14);
  EXPECT_NEAR(sigma_by_summation(0.5, 100000), 4.0 / pi, 1e-6);
  for (double s : {0.25, 0.75}) EXPECT_NEAR(sigma_by_summation(s, 100000), sigma_s(s), 1e-6) << s;
  EXPECT_NEAR(sigma_s(1.0 - 1e-6), 2.0, 1e-4);
}

TEST(SigmaS, ExactTailMatchesPartialSums) {
  for (double s : {0.2, 0.6}) {
    CompensatedSum acc;
    for (long m = 1; m <= 50; ++m) acc += 2.0 * kernel_ks(s, m);
    EXPECT_NEAR(acc.value() + kernel_ks_tail(s, 50), sigma_s(s), 1e-14);
    EXPECT_NEAR(kernel_ks_tail(s, 0), sigma_s(s), 1e-14);
  }
}

TEST(KernelKminus, HandValues) {
  const double s = 0.25;
  const double expect0 = std::pow(4.0, -s) * std::tgamma(0.25) / (std::sqrt(pi) * std::tgamma(0.75));
  EXPECT_LE(rel(kernel_kminus(s, 0), expect0), 1e-14);
  EXPECT_LE(rel(kernel_kminus_oracle(s, 12), kernel_kminus(s, 12)), 1e-8);
  EXPECT_LE(rel(kernel_kminus_oracle(s, 0), expect0), 1e-8);
  EXPECT_THROW(kernel_kminus(0.5, 3), DomainError);
  EXPECT_THROW(kernel_kminus(0.7, 3), DomainError);
}

TEST(KernelKminus, OracleAgreementGrid) {
  for (double s : {0.1, 0.2, 0.3, 0.4})
    for (long m = 0; m <= 64; ++m)
      EXPECT_LE(rel(kernel_kminus_oracle(s, m), kernel_kminus(s, m)), 1e-8) << s << " " << m;
}

TEST(KernelKminus, GrowthEstimate) {
  const double s = 0.1;
  const double main = c_minus_s(s) * std::pow(1000.0, 2.0 * s - 1.0);
  const double gap = std::abs(kernel_kminus(s, 1000) - main);
  // second-order constant taken from m = 10
  const double c2 = std::abs(kernel_kminus(s, 10) - c_minus_s(s) * std::pow(10.0, 2.0 * s - 1.0)) *
                    std::pow(10.0, 2.0 - 2.0 * s);
  EXPECT_LE(gap, c2 * std::pow(1000.0, 2.0 * s - 2.0));
  for (double t : {0.1, 0.2, 0.3, 0.4}) {
    auto scaled = [&](long m) {
      const double x = double(m);
      return std::abs(kernel_kminus(t, m) - c_minus_s(t) * std::pow(x, 2.0 * t - 1.0)) * std::pow(x, 2.0 - 2.0 * t);
    };
    for (long m = 10; m <= 10000; m += 11) EXPECT_LE(scaled(m), scaled(10) * (1 + 1e-9));
  }
}

TEST(KernelTableTest, Invariants) {
  KernelTable lap(SignedOrder(0.4), 200);
  EXPECT_EQ(lap[0], 0.0);
  EXPECT_DOUBLE_EQ(lap.h_exponent(), -0.8);
  EXPECT_EQ(lap[-7], lap[7]);
  EXPECT_NEAR(lap.tail_sum(), kernel_ks_tail(0.4, 200), 0.0);
  KernelTable frint(SignedOrder(-0.4), 200);
  EXPECT_DOUBLE_EQ(frint.h_exponent(), 0.8);
  EXPECT_GT(frint[0], 0.0);
  EXPECT_EQ(frint.tail_sum(), 0.0);
  for (double v : frint.values()) EXPECT_GT(v, 0.0);
  EXPECT_THROW(KernelTable(SignedOrder(0.4), 0), ConfigError);
  EXPECT_THROW(SignedOrder(-0.6), DomainError);
  EXPECT_THROW(SignedOrder(1.2), DomainError);
  EXPECT_THROW(SignedOrder(0.0), DomainError);
}

TEST(KernelTableTest, SourcesAgree) {
  KernelTable closed(SignedOrder(0.3), 40);
  KernelTable quad(SignedOrder(0.3), 40, KernelSource::quadrature);
  KernelTable hyb(SignedOrder(0.3), 40, KernelSource::hybrid, 5);
  KernelTable asym(SignedOrder(0.3), 40, KernelSource::asymptotic);
  for (long m = 1; m <= 40; ++m) {
    EXPECT_LE(rel(quad[m], closed[m]), 1e-9);
    EXPECT_LE(rel(hyb[m], closed[m]), 1e-9);
    EXPECT_EQ(asym[m], kernel1d_asymptotic(SignedOrder(0.3), m));
  }
  EXPECT_LT(rel(asym[40], closed[40]), rel(asym[2], closed[2]));
}

TEST(KernelTableTest, CacheSharesTablesAcrossThreads) {
  std::shared_ptr<const KernelTable> a, b;
  std::thread t1([&] { a = kernel_table(SignedOrder(0.35), 500); });
  std::thread t2([&] { b = kernel_table(SignedOrder(0.35), 500); });
  t1.join();
  t2.join();
  EXPECT_EQ(a.get(), b.get());
  EXPECT_NE(kernel_table(SignedOrder(0.35), 501).get(), a.get());
}
