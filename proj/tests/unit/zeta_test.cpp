#include <gtest/gtest.h>

#include <cmath>

#include "selmerlab/support/errors.hpp"
#include "selmerlab/vinberg/vinberg.hpp"
#include "selmerlab/zeta/zeta.hpp"

using namespace selmerlab;
using namespace selmerlab::zeta;

namespace {

// Independent count of monic irreducibles: unique factorization says
// ∏_d (1 − x^d)^{−I_d} = Σ q^m x^m, so peel off I_m degree by degree.
std::uint64_t sieve_irreducibles(std::uint64_t q, unsigned r) {
  std::vector<std::uint64_t> irr(r + 1, 0), monic(r + 1, 0);
  for (unsigned m = 0; m <= r; ++m) monic[m] = static_cast<std::uint64_t>(std::llround(std::pow(q, m)));
  // ∏_m (1 − x^m)^{−irr[m]} = Σ q^m x^m; peel degree by degree.
  for (unsigned m = 1; m <= r; ++m) {
    std::vector<long double> prod(r + 1, 0);
    prod[0] = 1;
    for (unsigned d = 1; d < m; ++d) {
      for (std::uint64_t k = 0; k < irr[d]; ++k) {
        std::vector<long double> next = prod;
        for (unsigned e = d; e <= r; ++e) next[e] += next[e - d];
        prod = next;
      }
    }
    irr[m] = monic[m] - static_cast<std::uint64_t>(std::llround(prod[m]));
  }
  return irr[r];
}

}  // namespace

TEST(Zeta, Moebius) {
  const int expected[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int i = 1; i <= 12; ++i) EXPECT_EQ(moebius(i), expected[i - 1]) << i;
}

TEST(Zeta, ClosedPoints) {
  EXPECT_EQ(closed_points(5, 1), 6);
  EXPECT_EQ(closed_points(5, 2), 10);
  for (std::uint64_t q : {3u, 5u, 7u})
    for (unsigned r = 1; r <= 4; ++r) EXPECT_EQ(irreducible_count(q, r), sieve_irreducibles(q, r)) << q << " " << r;
  for (std::uint64_t q : {3u, 5u, 9u})
    for (unsigned m = 1; m <= 6; ++m) {
      BigInt sum = 0;
      for (unsigned r = 1; r <= m; ++r)
        if (m % r == 0) sum += r * closed_points(q, r);
      EXPECT_EQ(sum, big_pow(q, m) + 1);
    }
}

TEST(Zeta, SuppliedCountsReproduceProjectiveLine) {
  std::vector<BigInt> counts;
  for (unsigned m = 1; m <= 12; ++m) counts.push_back(big_pow(5, m) + 1);
  const auto ctx = ZetaContext::from_point_counts(5, counts, 0);
  for (unsigned r = 1; r <= 12; ++r) EXPECT_EQ(closed_points(ctx, r), closed_points(5, r));
  const auto z = zeta_value(ctx, 3);
  EXPECT_LE(std::fabs(z.value - to_long_double(zeta_value(5, 3))), z.error_bound);
  EXPECT_LT(z.error_bound, 1e-9);
  EXPECT_THROW(ZetaContext::from_point_counts(5, {BigInt(6), BigInt(27)}, 0), InvariantViolation);
}

TEST(Zeta, ClosedForms) {
  EXPECT_EQ(zeta_value(5, 2), Rational(625, 480));
  EXPECT_EQ(zeta_value(5, 4), 1 / ((1 - Rational(1, 625)) * (1 - Rational(1, 125))));
  EXPECT_THROW(zeta_value(5, 1), DomainError);
  const auto ctx = ZetaContext::projective_line(5);
  EXPECT_EQ(zeta_value(ctx, 2).error_bound, 0);
}

TEST(Zeta, EulerProductMatchesClosedForm) {
  const auto ctx = ZetaContext::projective_line(5);
  for (unsigned s : {2u, 3u, 4u, 9u}) {
    const auto prod = euler_product(ctx, inverse_zeta_factors({s}));
    EXPECT_LT(std::fabs(prod.value - to_long_double(zeta_value(5, s))), 1e-9L) << s;
  }
  const auto plus = euler_product(ctx, one_plus_power(2));
  EXPECT_LT(std::fabs(plus.value - to_long_double(zeta_value(5, 2) / zeta_value(5, 4))), 1e-9L);
  const auto minus = euler_product(ctx, one_minus_power(9));
  EXPECT_LT(std::fabs(minus.value - to_long_double(1 / zeta_value(5, 9))), 1e-9L);
  for (std::size_t i = 1; i < plus.partial_products.size(); ++i)
    EXPECT_GE(plus.partial_products[i], plus.partial_products[i - 1]);
}

TEST(Zeta, ErrorBoundIsHonored) {
  for (std::uint64_t q : {3u, 5u, 7u}) {
    for (unsigned depth : {2u, 4u, 8u}) {
      const auto shallow = euler_product(ZetaContext::projective_line(q, depth), one_plus_power(2));
      const long double exact = to_long_double(zeta_value(q, 2) / zeta_value(q, 4));
      EXPECT_LE(std::fabs(shallow.value - exact), shallow.error_bound) << q << " " << depth;
    }
  }
}

TEST(Zeta, DivergentFamilyRejected) {
  const auto ctx = ZetaContext::projective_line(5);
  FactorFamily linear{"1+x", [](unsigned, long double x) { return x; }, 2, 1};
  EXPECT_THROW(euler_product(ctx, linear), DomainError);
  EXPECT_THROW(euler_product(ctx, one_plus_power(1)), DomainError);
}

TEST(Zeta, TabulatedFamily) {
  // α_r = q^{−4r} tabulated for every degree reproduces the (1 − x^4) family.
  const auto ctx = ZetaContext::projective_line(5);
  std::vector<long double> table;
  for (unsigned r = 1; r <= ctx.truncation; ++r) table.push_back(std::pow(5.0L, -4.0L * r));
  const auto tab = euler_product(ctx, one_minus_tabulated(table, 1));
  const auto closed = euler_product(ctx, one_minus_power(4));
  EXPECT_LT(std::fabs(tab.value - closed.value), 1e-15L);
  EXPECT_LT(std::fabs(tab.value - to_long_double(1 / zeta_value(5, 4))), 1e-9L);
}

TEST(Zeta, AverageConstants) {
  for (unsigned n : {1u, 2u}) {
    const auto c = average_constants(n, 5);
    EXPECT_LT(std::fabs(to_long_double(c.upper_bound_closed) - c.upper_bound_euler.value), 1e-9L);
    EXPECT_LT(std::fabs(to_long_double(c.tamagawa_closed) - c.tamagawa_euler.value), 1e-9L);
    EXPECT_EQ(c.dim_v, (2 * n + 3) * (n + 1) - 1);
    EXPECT_EQ(c.dim_g, 2 * n * n + 3 * n + 1);
    EXPECT_EQ(c.minimality, (1 - rational_pow(5, -static_cast<std::int64_t>((n + 2) * (2 * n + 1)))) *
                                (1 - rational_pow(5, 1 - static_cast<std::int64_t>((n + 2) * (2 * n + 1)))));
  }
  EXPECT_EQ(average_constants(1, 5).tamagawa_closed, 4 * zeta_value(5, 2) * zeta_value(5, 2));
  for (unsigned n = 1; n <= 4; ++n) EXPECT_EQ(average_constants(n, 3).dim_g, 2 * n * n + 3 * n + 1);
}

TEST(Zeta, LimitInLargeQ) {
  const auto c = average_constants(1, 1'000'000);
  EXPECT_LT(std::fabs(c.upper_bound_euler.value - 6), 1e-5L);
  EXPECT_LT(std::fabs(to_long_double(c.upper_bound_closed) - 6), 1e-5L);
}

TEST(Zeta, CensusLocalFactorMatchesFamily) {
  // At a degree-1 place c_v/(|G|·q^{2n+1}) is the local factor 1 + q^{−(n+1)}.
  const auto F = algebra::Field::of_order(3);
  const auto census = vinberg::fiber_census(F, 1);
  const Rational local(BigInt(census.total_regular), BigInt(576) * 27);
  EXPECT_EQ(local, 1 + Rational(1, 9));
  EXPECT_NEAR(static_cast<double>(to_long_double(local) - 1), static_cast<double>(one_plus_power(2).excess(1, 1.0L / 3)),
              1e-15);
}
