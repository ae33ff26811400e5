#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/bundles/bundles.hpp"
#include "selmerlab/funcfield/funcfield.hpp"
#include "selmerlab/quadspace/quadspace.hpp"
#include "selmerlab/support/errors.hpp"
#include "selmerlab/vinberg/vinberg.hpp"
#include "selmerlab/zeta/zeta.hpp"

using namespace selmerlab;
using namespace selmerlab::algebra;
using namespace selmerlab::bundles;

namespace {

HalfInt W(std::int64_t v) { return HalfInt::whole(v); }

SlopeProfile borel(unsigned n, std::int64_t d, std::vector<std::int64_t> slopes) {
  SlopeProfile p{n, 0, std::vector<unsigned>(slopes.size(), 1), {}, d, 0};
  for (auto s : slopes) p.slopes.push_back(W(s));
  return p;
}

// Upper unipotent element of SO via the Cayley transform of a strictly upper
// skew-adjoint matrix, then scaled by a random torus element.
MatN random_borel_element(const Field& F, std::size_t N, std::mt19937_64& rng) {
  MatN X = zero_matrix(F, N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; i + j < N - 1; ++j) {
      const FieldElem r = F.element(rng() % F.order());
      X(i, j) = r;
      X(N - 1 - j, N - 1 - i) = F.neg(r);
    }
  MatN plus = identity_matrix(F, N), minus = identity_matrix(F, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      plus(i, j) = F.add(plus(i, j), X(i, j));
      minus(i, j) = F.sub(minus(i, j), X(i, j));
    }
  MatN u = mat_mul(F, *inverse(F, minus), plus);
  MatN torus = zero_matrix(F, N, N);
  for (std::size_t i = 0; i < N / 2; ++i) {
    const FieldElem a = F.element(1 + rng() % (F.order() - 1));
    torus(i, i) = a;
    torus(N - 1 - i, N - 1 - i) = F.inv(a);
  }
  return mat_mul(F, torus, u);
}

}  // namespace

TEST(BundlesProfile, Admissibility) {
  EXPECT_TRUE(profile_violation(borel(1, 4, {5, 3})).empty());
  EXPECT_FALSE(profile_violation(borel(1, 4, {5, 5})).empty());
  EXPECT_FALSE(profile_violation(borel(1, 4, {3, 0})).empty());  // μ_1 + μ_2 ≤ d
  EXPECT_TRUE(profile_violation(borel(1, 4, {4, 1})).empty());
  SlopeProfile middle{2, 1, {1, 1}, {W(4), W(3)}, 4, 0};
  EXPECT_TRUE(profile_violation(middle).empty());
  middle.slopes = {W(4), W(2)};
  EXPECT_FALSE(profile_violation(middle).empty());  // needs μ_t > d/2
  SlopeProfile odd_rank{1, 0, {2}, {HalfInt::half(5)}, 4, 0};
  EXPECT_TRUE(profile_violation(odd_rank).empty());
  odd_rank.ranks = {1};
  EXPECT_FALSE(profile_violation(odd_rank).empty());
  SlopeProfile semistable{2, 3, {}, {}, 5, 0};
  EXPECT_TRUE(profile_violation(semistable).empty());
  EXPECT_THROW(validate(borel(1, 4, {3, 0})), DomainError);
}

TEST(BundlesProfile, RiemannRoch) {
  EXPECT_EQ(h0_line(-1, 0), 0);
  EXPECT_EQ(h0_line(3, 0), 4);
  EXPECT_EQ(h0_line(5, 2), 4);
  EXPECT_THROW(h0_line(1, 2), DomainError);
  EXPECT_EQ(h0_semistable(3, W(2), 0), 9);
  EXPECT_EQ(h0_semistable(2, HalfInt::half(-1), 0), 0);
  EXPECT_EQ(h0_semistable(2, HalfInt::half(1), 0), 3);
  EXPECT_THROW(h0_semistable(1, HalfInt::half(1), 0), DomainError);
}

TEST(BundlesFiltration, RankDegreeAndMirror) {
  std::vector<SlopeProfile> profiles = {borel(1, 4, {5, 3}), borel(2, 6, {9, 7, 2}),
                                        SlopeProfile{2, 1, {1, 1}, {W(4), W(3)}, 4, 0},
                                        SlopeProfile{3, 1, {2, 1}, {W(5), W(2)}, 2, 0},
                                        SlopeProfile{2, 3, {}, {}, 3, 0}};
  for (const auto& p : profiles) {
    const auto m = filtration_degrees(p);
    const std::uint64_t N = 2 * p.n + 2;
    EXPECT_EQ(m.total_rank(), N * (N + 1) / 2 - 1);
    EXPECT_EQ(m.total_degree(), HalfInt{});
    EXPECT_EQ(splitting_type_degree(p), HalfInt{});
    for (const auto& b : m.blocks) {
      const auto& mirror = m.at(m.mirror(b.col), m.mirror(b.row));
      EXPECT_EQ(b.slope + mirror.slope, HalfInt{});
      EXPECT_EQ(b.rank, mirror.rank);
    }
  }
}

TEST(BundlesFiltration, SectionBound) {
  // Borel extremal profile: the first row contributes (2n+2)μ_1 − (n+1)d + (2n+2)f + (2n+2).
  for (unsigned n : {1u, 2u}) {
    const std::int64_t f = 2, d = 4;
    std::vector<std::int64_t> slopes;
    for (unsigned i = 0; i <= n; ++i) slopes.push_back(3 + d / 2 + static_cast<std::int64_t>(n - i) * f);
    const auto p = borel(n, d, slopes);
    const auto m = filtration_degrees(p);
    std::int64_t row1 = 0;
    for (const auto& b : m.blocks)
      if (b.row == 1) row1 += block_h0(b, f, 0);
    // Every first-row block has non-negative twisted slope here.
    const std::int64_t N = 2 * n + 2;
    EXPECT_EQ(row1, N * slopes[0] - (n + 1) * d + N * f + N);
    std::int64_t prev = -1;
    for (std::int64_t g = 0; g < 6; ++g) {
      const auto sb = section_bound(p, g, 3);
      EXPECT_GE(sb.log_q, prev);
      prev = sb.log_q;
    }
  }
  // All blocks with negative slope give a single section.
  SlopeProfile flat{1, 2, {}, {}, 3, 0};
  for (const auto& b : filtration_degrees(flat).blocks) EXPECT_EQ(b.slope, HalfInt{});
  EXPECT_EQ(section_bound(flat, -1, 5).log_q, 0);
  EXPECT_EQ(section_bound(flat, -1, 5).value, 1);
}

TEST(BundlesAut, BorelFirstRowAndSwap) {
  const std::uint64_t q = 5;
  for (unsigned n : {1u, 2u, 3u}) {
    std::vector<std::int64_t> slopes;
    const std::int64_t d = 2;
    for (unsigned i = 0; i <= n; ++i) slopes.push_back(10 - 2 * static_cast<std::int64_t>(i));
    const auto p = borel(n, d, slopes);
    ASSERT_EQ(aut_case(p), AutCase::above_half);
    const auto a = aut_bound(p, q);
    BigInt first = 1;
    for (const auto& f : a.factors)
      if (f.first_index == 1) first *= f.size;
    EXPECT_EQ(first, BigInt(q - 1) * big_pow(q, n * (2 * slopes[0] - d) + 2 * n));
  }
  // Case iii agrees with case ii after reflecting the last slope.
  const auto below = borel(2, 6, {9, 7, 1});
  ASSERT_EQ(aut_case(below), AutCase::at_or_below_half);
  const auto above = swap_last(below);
  ASSERT_EQ(aut_case(above), AutCase::above_half);
  EXPECT_EQ(aut_bound(below, 3).value, aut_bound(above, 3).value);
  SlopeProfile mid{2, 1, {1, 1}, {W(4), W(3)}, 4, 0};
  EXPECT_EQ(aut_case(mid), AutCase::with_middle);
  EXPECT_GT(aut_bound(mid, 3).value, 0);
}

TEST(BundlesCaseTable, Classification) {
  EXPECT_EQ(case_classify(SlopeProfile{1, 2, {}, {}, 3, 0}, 0), CaseRow::case4);
  // Extremal Borel: 2μ_1 − d = (2n+1)f.
  EXPECT_EQ(case_classify(borel(1, 2, {4, 2}), 2), CaseRow::case2_borel_equal);
  EXPECT_EQ(contribution_of(case_classify(borel(1, 2, {4, 2}), 2)), Contribution::one);
  EXPECT_EQ(case_classify(borel(1, 2, {4, 0}), 2), CaseRow::case3_borel_equal);
  EXPECT_EQ(case_classify(borel(1, 3, {7, 5}), 4), CaseRow::case2_borel_below);
  EXPECT_EQ(case_classify(borel(1, 2, {4, 3}), 3), CaseRow::case2_low);
  EXPECT_EQ(case_classify(borel(1, 2, {5, 3}), 2), CaseRow::case2_borel_above);
  EXPECT_EQ(case_classify(SlopeProfile{1, 0, {2}, {W(3)}, 2, 0}, 2), CaseRow::case2_parabolic);
  EXPECT_EQ(case_classify(SlopeProfile{2, 1, {1, 1}, {W(4), W(3)}, 4, 0}, 1), CaseRow::case1);
  const auto degs = subdiagonal_degrees(borel(1, 2, {5, 3}), 2);
  EXPECT_LT(std::min(degs[0], degs[1]), HalfInt{});
  EXPECT_EQ(case_number(CaseRow::case3_low), 3u);
}

TEST(BundlesCaseTable, SweepIsTotalAndConsistent) {
  const auto start = std::chrono::steady_clock::now();
  const auto s = profile_sweep(1, 12, 24);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 60.0);
  EXPECT_GT(s.profiles, 1000u);
  EXPECT_EQ(s.gaps, 0u);
  EXPECT_EQ(s.family_violations, 0u);
  EXPECT_GT(s.contribution_one, 0u);
  EXPECT_EQ(s.contribution_one_mismatches, 0u);
  EXPECT_EQ(s.above_without_negative_entry, 0u);
  for (std::size_t r = 0; r < s.row_counts.size(); ++r)
    if (static_cast<CaseRow>(r) != CaseRow::case1 && static_cast<CaseRow>(r) != CaseRow::case2_parabolic &&
        static_cast<CaseRow>(r) != CaseRow::case3_parabolic)
      EXPECT_GT(s.row_counts[r], 0u) << row_name(static_cast<CaseRow>(r));
}

TEST(BundlesCaseTable, ZeroContributionFamiliesAtRankTwo) {
  const auto s = profile_sweep(2, 4, 8);
  EXPECT_EQ(s.gaps, 0u);
  EXPECT_GT(s.family_checked, 0u);
  EXPECT_EQ(s.family_violations, 0u);
  EXPECT_EQ(s.contribution_one_mismatches, 0u);
  EXPECT_EQ(s.above_without_negative_entry, 0u);

  bool saw[3] = {false, false, false};
  for (std::int64_t f = 1; f <= 4; ++f)
    for (std::int64_t d = 0; d <= 6; ++d)
      for_each_profile(2, f, d, [&](const SlopeProfile& p) {
        if (const auto r = lemma_family(p, f)) {
          saw[r->family] = true;
          EXPECT_TRUE(r->holds);
          EXPECT_LE(r->log_ratio, r->bound);
          EXPECT_LE(r->log_h1 - r->log_h2, r->bound);
        }
      });
  EXPECT_TRUE(saw[1]);
  EXPECT_TRUE(saw[2]);
  EXPECT_THROW(contribution_ratio(borel(1, 2, {4, 2}), 2), DomainError);
}

TEST(BundlesKostant, ReducesConjugatesOfTheSection) {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {5ull, 7ull, 9ull}) {
    const Field F = Field::of_order(q);
    for (unsigned n : {1u, 2u}) {
      const std::size_t N = 2 * n + 2;
      for (int trial = 0; trial < 40; ++trial) {
        vinberg::Invariant c{n, {}};
        for (unsigned i = 0; i < 2 * n + 1; ++i) c.coeffs.push_back(F.element(rng() % q));
        const MatN b = random_borel_element(F, N, rng);
        ASSERT_EQ(quadspace::multiplier(F, b), F.one());
        const MatN A = mat_mul(F, mat_mul(F, b, vinberg::kostant1(F, c)), *inverse(F, b));
        const auto red = kostant_reduce(F, A);
        EXPECT_EQ(red.result, vinberg::kostant1(F, c));
        EXPECT_EQ(red.invariants.coeffs, c.coeffs);
        EXPECT_EQ(quadspace::multiplier(F, red.conjugator), red.multiplier);
        if (red.multiplier == F.one()) EXPECT_EQ(det(F, red.conjugator), F.one());
        EXPECT_EQ(mat_mul(F, mat_mul(F, red.conjugator, A), *inverse(F, red.conjugator)), red.result);
      }
    }
  }
}

TEST(BundlesKostant, NonSquareMiddleUsesSimilitude) {
  const Field F = Field::of_order(5);
  const unsigned n = 1;
  vinberg::Invariant c{n, {F.element(1), F.element(2), F.element(3)}};
  MatN A = vinberg::kostant1(F, c);
  // Scale by diag(1, 1, 2, 2): a similitude with multiplier 2, a non-square mod 5.
  MatN D = zero_matrix(F, 4, 4), D_inv = zero_matrix(F, 4, 4);
  const FieldElem two = F.element(2);
  for (std::size_t i = 0; i < 4; ++i) {
    D(i, i) = i < 2 ? F.one() : two;
    D_inv(i, i) = F.inv(D(i, i));
  }
  A = mat_mul(F, mat_mul(F, D, A), D_inv);
  ASSERT_FALSE(F.is_square(A(2, 1)));
  const auto red = kostant_reduce(F, A);
  EXPECT_NE(red.multiplier, F.one());
  EXPECT_EQ(red.result, vinberg::kostant1(F, c));
}

TEST(BundlesKostant, RejectsOutsideTheChart) {
  const Field F = Field::of_order(5);
  vinberg::Invariant c{1, {F.one(), F.one(), F.one()}};
  MatN A = vinberg::kostant1(F, c);
  A(1, 0) = F.zero();
  A(3, 2) = F.zero();
  EXPECT_THROW(kostant_reduce(F, A), DomainError);
  EXPECT_THROW(kostant_reduce(F, zero_matrix(F, 3, 3)), DomainError);
}

TEST(BundlesVanishing, SubdiagonalZeroForcesDoubleRoot) {
  const Field F = Field::of_order(5);
  std::mt19937_64 rng(2024);
  auto rand_poly = [&](std::size_t deg) {
    std::vector<FieldElem> co;
    for (std::size_t k = 0; k <= deg; ++k) co.push_back(F.element(rng() % 5));
    return Poly(F, co);
  };
  for (unsigned n : {1u, 2u}) {
    const std::size_t N = 2 * n + 2;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const FieldElem a = F.element(rng() % 5);
      const Poly linear = Poly(F, {F.neg(a), F.one()});
      const auto place = funcfield::Place::finite(linear);
      const unsigned index = 1 + static_cast<unsigned>(trial % (n + 1));
      Matrix<Poly> M(N, N, Poly(F));
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = (i == 0 ? 0 : i - 1); j < N; ++j)
          if (i + j <= N - 1) {
            const Poly r = rand_poly(2);
            M(i, j) = r;
            M(N - 1 - j, N - 1 - i) = r;
          }
      Poly diag_sum(F);
      for (std::size_t i = 0; i < n; ++i) diag_sum += M(i, i);
      M(n, n) = -diag_sum;
      M(n + 1, n + 1) = -diag_sum;
      Poly x = linear * rand_poly(1);
      if (x.is_zero()) x = linear;
      M(index, index - 1) = x;
      M(N - index, N - 1 - index) = x;
      const auto report = disc_vanishing_check(F, n, M, place, index);
      EXPECT_TRUE(report.at_least_two) << "n=" << n << " index=" << index;
      ++checked;
    }
    EXPECT_EQ(checked, 100);
  }
  Matrix<Poly> bad(4, 4, Poly(F));
  bad(1, 0) = Poly::constant(F, F.one());
  bad(3, 2) = bad(1, 0);
  EXPECT_THROW(disc_vanishing_check(F, 1, bad, funcfield::Place::finite(Poly::x(F)), 1), DomainError);
}

TEST(BundlesCase4, ConstantMatchesAverage) {
  for (unsigned n : {1u, 2u, 3u}) {
    const auto c = case4_constant_check(n, 5);
    EXPECT_TRUE(c.traceless_rank_matches);
    EXPECT_TRUE(c.f_coefficient_cancels);
    EXPECT_TRUE(c.exponent_is_dim_g);
    EXPECT_TRUE(c.matches_average_constants);
    EXPECT_EQ(c.constant_exponent, static_cast<std::int64_t>(quadspace::group_order(n + 1, 5).dim_g));
  }
  // n = 1, q = 3: 4·ζ(2)² with ζ(2) = 1/((1 − 1/3)(1 − 1/9)).
  const Rational zeta2 = Rational(1) / ((1 - Rational(1, 3)) * (1 - Rational(1, 9)));
  EXPECT_EQ(case4_constant_check(1, 3).constant, 4 * zeta2 * zeta2);
}
