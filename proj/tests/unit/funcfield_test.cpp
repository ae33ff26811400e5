#include <gtest/gtest.h>

#include <random>
#include <set>

#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/funcfield/funcfield.hpp"
#include "selmerlab/support/errors.hpp"

using namespace selmerlab;
using namespace selmerlab::algebra;
using namespace selmerlab::funcfield;

namespace {

Poly random_poly(const Field& F, std::size_t max_degree, std::mt19937_64& rng) {
  std::vector<FieldElem> c(max_degree + 1);
  for (auto& e : c) e = F.element(rng() % F.order());
  return Poly(F, c);
}

}  // namespace

TEST(FuncField, Valuations) {
  const Field F = Field::of_order(5);
  const Poly t = Poly::x(F);
  const Place at_t = Place::finite(t);
  EXPECT_EQ(val(power(t, 3), at_t), 3);
  EXPECT_EQ(val(t, Place::infinity()), -1);
  EXPECT_FALSE(val(Poly(F), at_t).has_value());
  EXPECT_EQ(val(RationalFunction(Poly::from_ints(F, {1}), power(t, 2)), Place::infinity()), 2);
  std::mt19937_64 rng(3);
  const Place v = Place::finite(Poly::from_ints(F, {2, 0, 1}));  // t² + 2 is irreducible mod 5
  for (int i = 0; i < 300; ++i) {
    Poly a = random_poly(F, 6, rng), b = random_poly(F, 6, rng);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ(*val(a * b, v), *val(a, v) + *val(b, v));
    EXPECT_EQ(*val(a * b, Place::infinity()), *val(a, Place::infinity()) + *val(b, Place::infinity()));
  }
}

TEST(FuncField, MinimalModelExamples) {
  const Field F = Field::of_order(5);
  const Poly t = Poly::x(F);
  const Poly zero(F);
  auto m0 = minimal_model(1, std::vector<Poly>{Poly::from_ints(F, {1}), zero, Poly::from_ints(F, {3})});
  EXPECT_EQ(m0.height, 0);
  EXPECT_TRUE(m0.exponents.empty());

  auto m1 = minimal_model(1, std::vector<Poly>{zero, zero, t});
  EXPECT_EQ(m1.height, 1);
  ASSERT_EQ(m1.exponents.size(), 1u);
  EXPECT_TRUE(m1.exponents[0].place.is_infinity());
  EXPECT_TRUE(is_minimal(m1));

  // (t², t³, t⁴) is the λ = t twist of (1, 1, 1): height 0.
  auto m2 = minimal_model(1, std::vector<Poly>{power(t, 2), power(t, 3), power(t, 4)});
  EXPECT_EQ(m2.height, 0);
  EXPECT_EQ(m2.c(2), Poly::from_ints(F, {1}));
  EXPECT_TRUE(is_minimal(m2));

  EXPECT_THROW(minimal_model(1, std::vector<Poly>{zero, zero, zero}), DomainError);
}

TEST(FuncField, MinimalModelIsIdempotentAndMinimal) {
  const Field F = Field::of_order(3);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RationalFunction> c;
    for (int k = 0; k < 3; ++k) {
      Poly den = random_poly(F, 2, rng);
      if (den.is_zero()) den = Poly::from_ints(F, {1});
      c.emplace_back(random_poly(F, 4, rng), den);
    }
    if (std::all_of(c.begin(), c.end(), [](const auto& r) { return r.is_zero(); })) continue;
    const auto m = minimal_model(1, c);
    EXPECT_TRUE(is_minimal(m));
    const auto again = minimal_model(1, m.sections);
    EXPECT_EQ(again.height, m.height);
    EXPECT_EQ(again.sections, m.sections);
    // λ-twist by a constant leaves the height alone.
    std::vector<RationalFunction> twisted;
    const FieldElem lam = F.from_int(2);
    for (std::size_t k = 0; k < c.size(); ++k)
      twisted.push_back(c[k] * RationalFunction(Poly::constant(F, F.pow(lam, k + 2))));
    EXPECT_EQ(minimal_model(1, twisted).height, m.height);
  }
}

TEST(FuncField, Transversality) {
  const Field F = Field::of_order(5);
  const Poly t = Poly::x(F);
  const Poly zero(F);
  auto constant = model_from_sections(1, 0, {Poly::from_ints(F, {1}), zero, Poly::from_ints(F, {1})});
  EXPECT_TRUE(is_transversal(constant));
  EXPECT_THROW(is_transversal(model_from_sections(1, 1, {zero, zero, zero})), DomainError);

  // x⁴ + t²: Δ = 256·t⁶ has a repeated finite root.
  auto repeated = model_from_sections(1, 1, {zero, zero, power(t, 2)});
  EXPECT_FALSE(transversality(repeated).finite_squarefree);
  // x⁴ + x² + 1 at height 1: Δ constant, order 12 at ∞.
  auto flat = model_from_sections(1, 1, {Poly::from_ints(F, {1}), zero, Poly::from_ints(F, {1})});
  EXPECT_EQ(transversality(flat).order_at_infinity, 12u);
  EXPECT_FALSE(is_transversal(flat));
}

TEST(FuncField, DiscriminantInTMatchesPointwise) {
  const Field F = Field::of_order(7);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Poly> s{random_poly(F, 2, rng), random_poly(F, 3, rng), random_poly(F, 4, rng)};
    const Poly delta = discriminant_in_t(F, 1, s);
    for (auto a : F.elements()) {
      Poly f = Poly(F, {s[2].eval(a), s[1].eval(a), s[0].eval(a), F.zero(), F.one()});
      EXPECT_EQ(delta.eval(a), discriminant(f));
    }
  }
}

TEST(FuncField, AutOrder) {
  const Field F = Field::of_order(5);
  const Poly one = Poly::from_ints(F, {1});
  const Poly zero(F);
  EXPECT_EQ(aut_order(model_from_sections(1, 0, {one, one, zero})), 1u);
  EXPECT_EQ(aut_order(model_from_sections(1, 0, {one, zero, one})), 2u);
  EXPECT_EQ(aut_order(model_from_sections(1, 0, {zero, zero, zero})), 4u);
  EXPECT_EQ(aut_order(model_from_sections(1, 0, {zero, zero, one})), 4u);
}

TEST(FuncField, OrbitSizesMatchAutOrder) {
  // Height-0 tuples at q=5: the λ-orbit of c has (q−1)/|Aut| elements.
  const Field F = Field::of_order(5);
  for (std::uint32_t idx = 1; idx < 125; ++idx) {
    std::vector<FieldElem> c{F.element(idx % 5), F.element(idx / 5 % 5), F.element(idx / 25)};
    std::set<std::vector<FieldElem>> orbit;
    for (std::uint32_t l = 1; l < 5; ++l) {
      std::vector<FieldElem> img;
      for (std::size_t k = 0; k < 3; ++k) img.push_back(F.mul(F.pow(F.element(l), k + 2), c[k]));
      orbit.insert(img);
    }
    std::vector<Poly> s;
    for (auto e : c) s.push_back(Poly::constant(F, e));
    EXPECT_EQ(orbit.size(), 4u / aut_order(model_from_sections(1, 0, s)));
  }
}

TEST(FuncField, CurveCount) {
  EXPECT_EQ(curve_count(1, 0, 1, 5), Rational(big_pow(5, 12)));
  EXPECT_EQ(curve_count(0, 0, 1, 5), Rational(125));
  for (unsigned n = 1; n <= 3; ++n) {
    for (std::int64_t d = 0; d <= 4; ++d) {
      std::int64_t sum = 0;
      for (std::int64_t i = 2; i <= 2 * static_cast<std::int64_t>(n) + 2; ++i) sum += i * d + 1;
      EXPECT_EQ(curve_count(d, 0, n, 3), rational_pow(3, sum));
    }
  }
}

TEST(FuncField, TorsionScan) {
  const Field F = Field::of_order(3);
  const Poly t = Poly::x(F);
  const Poly one = Poly::from_ints(F, {1});
  const Poly zero(F);
  // (x² + t)(x² + t + 1) = x⁴ + (2t+1)x² + t(t+1)
  auto planted = model_from_sections(1, 1, {t + t + one, zero, t * (t + one)});
  auto w = rational_2torsion_scan(planted);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kind, TorsionWitness::Kind::even_factorization);
  // x⁴ + t is Eisenstein at t.
  EXPECT_FALSE(rational_2torsion_scan(model_from_sections(1, 1, {zero, zero, t})).has_value());
  // (x² + 1)² − t·x² has a conjugate-pair witness.
  auto conj = model_from_sections(1, 1, {one + one - t, zero, one});
  auto w2 = rational_2torsion_scan(conj);
  ASSERT_TRUE(w2.has_value());
}

TEST(FuncField, TorsionCensusUnderBound) {
  const Field F = Field::of_order(3);
  EXPECT_EQ(rational_2torsion_bound(1, 3, 1), Rational(32805));
  const auto census = rational_2torsion_census(F, 1, 1);
  EXPECT_GT(census.total, 0u);
  EXPECT_LE(Rational(census.total), census.bound);
  EXPECT_LE(census.total, census.even_factorization + census.conjugate_pair);
}
