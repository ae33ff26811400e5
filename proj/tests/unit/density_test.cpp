#include <gtest/gtest.h>

#include <cmath>

#include "selmerlab/density/density.hpp"
#include "selmerlab/quadspace/quadspace.hpp"
#include "selmerlab/support/errors.hpp"

using namespace selmerlab;
using namespace selmerlab::density;

namespace {

Rational q_pow(std::uint64_t q, std::int64_t e) { return rational_pow(q, e); }

}  // namespace

TEST(Density, AlphaMatchesSplitOracle) {
  for (unsigned q : {3u, 5u, 7u}) {
    const Field F = Field::of_order(q);
    const auto direct = alpha_v(F, 1);
    const auto split = alpha_v_split(F, 1);
    EXPECT_EQ(direct.exact(), split.exact()) << "q=" << q;
    EXPECT_EQ(direct.method, Method::exhaustive);
    EXPECT_EQ(direct.half_width, 0);
    EXPECT_LT(direct.value, 1);
    EXPECT_LE(direct.value * q * q, 10) << "q=" << q;
  }
  EXPECT_EQ(alpha_v(Field::of_order(3), 1).exact(), Rational(19, 81));
}

TEST(Density, AlphaSplitAtLargerRank) {
  const Field F = Field::of_order(3);
  EXPECT_EQ(alpha_v(F, 2).exact(), alpha_v_split(F, 2).exact());
}

TEST(Density, AlphaIndependentOfWorkers) {
  const Field F = Field::of_order(5);
  EXPECT_EQ(alpha_v(F, 1, 1).exact(), alpha_v(F, 1, 3).exact());
}

TEST(Density, JetDiscriminantReducesToFieldDiscriminant) {
  const Field F = Field::of_order(5);
  const algebra::JetRing J(F);
  for (std::uint64_t idx = 0; idx < 125; ++idx) {
    std::vector<algebra::JetElem> c;
    std::uint64_t rest = idx;
    std::vector<FieldElem> coeffs(5, F.zero());
    coeffs[4] = F.one();
    for (int i = 0; i < 3; ++i) {
      const FieldElem e = F.element(rest % 5);
      rest /= 5;
      c.push_back(J.make(e, F.element((idx + i) % 5)));
      coeffs[4 - (i + 2)] = e;
    }
    EXPECT_EQ(jet_discriminant(J, 1, c).a0, algebra::discriminant(algebra::Poly(F, coeffs)));
  }
}

TEST(Density, BetaExactRatioLawAtThree) {
  const Field F = Field::of_order(3);
  const auto alpha = alpha_v(F, 1);
  const auto beta = beta_v_exact(F, 1);
  EXPECT_EQ((1 - beta.exact()) / (1 - alpha.exact()), ratio_target(1, 3));
  EXPECT_EQ(ratio_target(1, 3), Rational(576, 729));
}

TEST(Density, BetaSampledIsReproducible) {
  const Field F = Field::of_order(3);
  const auto a = beta_v(F, 1, 100'000, 42, 1);
  const auto b = beta_v(F, 1, 100'000, 42, 4);
  EXPECT_EQ(a.numerator, b.numerator);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_NE(beta_v(F, 1, 100'000, 43).numerator, a.numerator);
  EXPECT_THROW(beta_v(F, 1, 1000, 1), DomainError);
}

TEST(Density, BetaSampledRatioLawAtThree) {
  const Field F = Field::of_order(3);
  const auto alpha = alpha_v(F, 1);
  const auto beta = beta_v(F, 1, 200'000, 7);
  const auto check = ratio_law(alpha, beta, 1, 3);
  EXPECT_TRUE(check.within_3_sigma) << check.ratio << " vs " << check.target << " σ=" << check.sigma;
  EXPECT_LT(beta.value, alpha.value + 3 * beta.sigma + (1 - check.target));
  EXPECT_NEAR(static_cast<double>(beta.value), static_cast<double>(to_long_double(beta_v_exact(F, 1).exact())),
              static_cast<double>(3 * beta.sigma));
}

TEST(Density, ArithmeticSeriesExponent) {
  for (unsigned n = 1; n <= 3; ++n) {
    unsigned total = 0;
    for (unsigned i = 2; i <= 2 * n + 2; ++i) total += i;
    EXPECT_EQ(total, (n + 2) * (2 * n + 1));
  }
}

TEST(Density, MinimalityLocalFactor) {
  for (unsigned q : {3u, 5u}) {
    const auto r = minimality_local(Field::of_order(q), 1);
    EXPECT_EQ(r.exact(), 1 - q_pow(q, -9)) << "q=" << q;
  }
}

TEST(Density, MinimalityGlobalExhaustiveAtHeightOne) {
  // At height 1 only degree-1 places can fail. A finite place t − a fails iff
  // c_i = b_i (t − a)^i, ∞ fails iff every c_i is constant, and two places fail
  // together only on the zero tuple (which is never minimal).
  const std::uint64_t q = 3;
  const auto r = minimality_global_exhaustive(Field::of_order(q), 1, 1);
  const BigInt bad = BigInt(q + 1) * (q * q * q - 1) + 1;
  EXPECT_EQ(r.exact(), 1 - Rational(bad, big_pow(q, 12)));
}

TEST(Density, MinimalityGlobalSampled) {
  const Field F = Field::of_order(3);
  const auto r = minimality_global(F, 1, 2, 200'000, 11);
  const long double expected = to_long_double((1 - q_pow(3, -9)) * (1 - q_pow(3, -8)));
  EXPECT_LE(std::fabs(r.value - expected), 3 * std::max(r.sigma, 1e-6L));
}

TEST(Density, SemistableCensus) {
  long double worst = 0, best = 1e9;
  for (unsigned q : {3u, 5u, 7u}) {
    const auto s = semistable_census(Field::of_order(q), 1);
    EXPECT_EQ(s.square, q) << "q=" << q;
    EXPECT_EQ(s.union_count, s.non_semistable + s.square - s.intersection_count);
    EXPECT_EQ(s.factor_intersection, 1 - Rational(s.intersection_count, s.total));
    EXPECT_EQ(s.factor_union, 1 - Rational(s.union_count, s.total));
    const long double scaled = static_cast<long double>(s.non_semistable) / q;
    worst = std::max(worst, scaled);
    best = std::min(best, scaled);
  }
  // Non-semistable means a root of multiplicity ≥ 3: a codimension-2 locus.
  EXPECT_LE(worst, 2);
  EXPECT_GE(best, 1);
}

TEST(Density, RegularDensityAtThree) {
  const Field F = Field::of_order(3);
  const auto a = regular_density(F, 1, 1, 2);
  const auto b = regular_density(F, 1, 1, 16);
  EXPECT_EQ(a.c_v, b.c_v);
  EXPECT_TRUE(a.within_bounds);
  EXPECT_EQ(a.lower_bound, BigInt(24) * 576);
  EXPECT_EQ(a.upper_bound, BigInt(576) * 30);
}

TEST(Density, SquarefreeDiscriminant) {
  const Field F = Field::of_order(3);
  const auto r = squarefree_disc_density(F, 1, 1, 100'000, 5);
  EXPECT_GT(r.report.value - r.report.half_width, 0);
  EXPECT_EQ(r.report.numerator + r.degenerate + r.finite_repeated + r.infinity_too_deep, 100'000);
  const auto again = squarefree_disc_density(F, 1, 1, 100'000, 5);
  EXPECT_EQ(again.report.numerator, r.report.numerator);
  EXPECT_EQ(again.degenerate, r.degenerate);
}
