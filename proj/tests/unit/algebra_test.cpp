#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "selmerlab/algebra/extension.hpp"
#include "selmerlab/algebra/field.hpp"
#include "selmerlab/algebra/jet.hpp"
#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/algebra/matrix.hpp"
#include "selmerlab/algebra/poly.hpp"
#include "selmerlab/algebra/poly_ring.hpp"
#include "selmerlab/support/errors.hpp"

using namespace selmerlab;
using namespace selmerlab::algebra;

namespace {

// Number of monic irreducibles of degree d over F_q, by Möbius inversion.
std::uint64_t necklace_count(std::uint64_t q, unsigned d) {
  auto mobius = [](unsigned m) {
    int mu = 1;
    for (unsigned p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      mu = -mu;
    }
    return m > 1 ? -mu : mu;
  };
  std::int64_t total = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    std::int64_t pw = 1;
    for (unsigned i = 0; i < d / e; ++i) pw *= static_cast<std::int64_t>(q);
    total += mobius(e) * pw;
  }
  return static_cast<std::uint64_t>(total / d);
}

Poly monic_from_index(const Field& F, unsigned deg, std::uint64_t idx) {
  std::vector<FieldElem> c(deg + 1);
  for (unsigned i = 0; i < deg; ++i) {
    c[i] = F.element(idx % F.order());
    idx /= F.order();
  }
  c[deg] = F.one();
  return Poly(F, c);
}

}  // namespace

class FieldAxioms : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(FieldAxioms, RingLawsAndInverses) {
  const Field F = Field::of_order(GetParam());
  const auto els = F.elements();
  ASSERT_EQ(els.size(), F.order());
  for (auto a : els) {
    EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
    if (a.v) EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
    EXPECT_EQ(F.pow(a, F.order()), a);
    for (auto b : els) {
      EXPECT_EQ(F.add(a, b), F.add(b, a));
      EXPECT_EQ(F.mul(a, b), F.mul(b, a));
      if (F.order() <= 27) {
        for (auto c : els) EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
  }
}

TEST_P(FieldAxioms, SquaresAndRoots) {
  const Field F = Field::of_order(GetParam());
  std::set<std::uint32_t> squares;
  for (auto a : F.elements())
    if (a.v) squares.insert(F.mul(a, a).v);
  EXPECT_EQ(squares.size(), (F.order() - 1) / 2);
  for (auto a : F.elements()) {
    if (!a.v) continue;
    EXPECT_EQ(F.is_square(a), squares.count(a.v) == 1);
    auto r = F.sqrt(a);
    EXPECT_EQ(r.has_value(), F.is_square(a));
    if (r) EXPECT_EQ(F.mul(*r, *r), a);
  }
  EXPECT_FALSE(F.is_square(F.nonsquare()));
}

TEST_P(FieldAxioms, PrimitiveElementAndFrobenius) {
  const Field F = Field::of_order(GetParam());
  const FieldElem g = F.primitive_element();
  std::set<std::uint32_t> seen;
  FieldElem x = F.one();
  for (std::uint32_t i = 0; i + 1 < F.order(); ++i) {
    seen.insert(x.v);
    EXPECT_EQ(F.log(x), i);
    x = F.mul(x, g);
  }
  EXPECT_EQ(seen.size(), F.order() - 1);
  for (auto a : F.elements()) {
    EXPECT_EQ(F.frobenius(a), F.pow(a, F.characteristic()));
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms, ::testing::Values(3u, 5u, 7u, 9u, 25u, 27u, 81u, 121u, 125u));

TEST(Field, RejectsBadOrders) {
  EXPECT_THROW(Field::of_order(2), DomainError);
  EXPECT_THROW(Field::of_order(12), DomainError);
  EXPECT_THROW(Field::of_order(1), DomainError);
  EXPECT_TRUE(is_prime(1'000'003));
  EXPECT_EQ(prime_power(243), std::make_pair(3u, 5u));
  EXPECT_FALSE(prime_power(100).has_value());
}

TEST(Poly, DivmodReconstructs) {
  const Field F = Field::of_order(9);
  for (std::uint64_t i = 0; i < 200; ++i) {
    Poly a = monic_from_index(F, 5, i * 7919 + 13);
    Poly b = monic_from_index(F, 2, i * 31 + 1);
    auto [quo, rem] = divmod(a, b);
    EXPECT_EQ(quo * b + rem, a);
    EXPECT_LT(rem.degree(), b.degree());
  }
}

TEST(Poly, IrreducibleCountsMatchNecklaceFormula) {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    const Field F = Field::of_order(q);
    for (unsigned d = 1; d <= 4 && std::pow(double(q), d) <= 7000; ++d) {
      std::uint64_t total = 1;
      for (unsigned i = 0; i < d; ++i) total *= q;
      std::uint64_t irr = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx)
        if (is_irreducible(monic_from_index(F, d, idx))) ++irr;
      EXPECT_EQ(irr, necklace_count(q, d)) << "q=" << q << " d=" << d;
    }
  }
}

TEST(Poly, FactorExpandsBackAndFactorsAreIrreducible) {
  const Field F = Field::of_order(5);
  for (std::uint64_t idx = 0; idx < 3125; idx += 7) {
    Poly f = monic_from_index(F, 5, idx);
    auto fac = factor(f);
    EXPECT_EQ(expand(fac, F), f);
    for (const auto& fp : fac) EXPECT_TRUE(is_irreducible(fp.factor));
    std::set<std::vector<FieldElem>> distinct;
    for (const auto& fp : fac) distinct.insert(fp.factor.coeffs());
    EXPECT_EQ(distinct.size(), fac.size());
  }
}

TEST(Poly, SquarefreeDecompositionAgreesWithFactorization) {
  const Field F = Field::of_order(3);
  // (x+1)^3 (x^2+1)^2 x in characteristic 3 exercises the p-th root step.
  Poly f = power(Poly::from_ints(F, {1, 1}), 3) * power(Poly::from_ints(F, {1, 0, 1}), 2) * Poly::x(F);
  auto fac = factor(f);
  std::map<std::size_t, Poly> by_mult;
  for (const auto& fp : fac) {
    auto it = by_mult.find(fp.multiplicity);
    if (it == by_mult.end()) by_mult.emplace(fp.multiplicity, fp.factor);
    else it->second = it->second * fp.factor;
  }
  auto sqf = squarefree_decomposition(f);
  ASSERT_EQ(sqf.size(), by_mult.size());
  for (const auto& part : sqf) EXPECT_EQ(part.factor, by_mult.at(part.multiplicity));
  EXPECT_FALSE(is_squarefree(f));
  EXPECT_TRUE(is_squarefree(Poly::from_ints(F, {1, 0, 1})));
}

TEST(Poly, DiscriminantMatchesRootProduct) {
  // Oracle: ∏_{i<j}(r_i − r_j)² over a splitting field.
  const Field F = Field::of_order(5);
  const FieldEmbedding emb(F, Field::make(5, 4));
  for (std::uint64_t idx = 0; idx < 625; idx += 3) {
    Poly f = monic_from_index(F, 4, idx);
    // Roots over F_{5^4} suffice only when every factor has degree dividing 4.
    bool splits = true;
    for (const auto& fp : factor(f)) splits &= (4 % fp.factor.degree().value() == 0);
    if (!splits) continue;
    std::vector<FieldElem> roots;
    for (auto z : emb.big().elements()) {
      FieldElem acc = emb.big().zero();
      for (std::size_t k = f.length(); k-- > 0;) acc = emb.big().add(emb.big().mul(acc, z), emb.push(f.coeff(k)));
      if (acc.v == 0) roots.push_back(z);
    }
    FieldElem expected = emb.big().one();
    if (!is_squarefree(f)) {
      expected = emb.big().zero();
    } else {
      ASSERT_EQ(roots.size(), 4u);
      for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
          auto d = emb.big().sub(roots[i], roots[j]);
          expected = emb.big().mul(expected, emb.big().mul(d, d));
        }
    }
    auto pulled = emb.pull(expected);
    ASSERT_TRUE(pulled.has_value());
    EXPECT_EQ(discriminant(f), *pulled) << f.to_string();
    EXPECT_EQ(discriminant_of_monic(F, f.coeffs()), *pulled);
  }
}

TEST(Poly, ResultantIsMultiplicative) {
  const Field F = Field::of_order(7);
  Poly a = Poly::from_ints(F, {1, 2, 0, 1});
  Poly b = Poly::from_ints(F, {3, 1, 1});
  Poly c = Poly::from_ints(F, {2, 5});
  EXPECT_EQ(resultant(a, b * c), F.mul(resultant(a, b), resultant(a, c)));
  EXPECT_EQ(resultant(a, a * b), F.zero());
}

TEST(Matrix, BerkowitzMatchesEliminationDeterminant) {
  const Field F = Field::of_order(11);
  std::uint64_t state = 17;
  for (int trial = 0; trial < 100; ++trial) {
    MatN A(5, 5, F.zero());
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        A(i, j) = F.element((state >> 33) % 11);
      }
    EXPECT_EQ(determinant(F, A), det(F, A));
    auto cp = charpoly(F, A);
    // Cayley–Hamilton
    MatN acc = zero_matrix(F, 5, 5);
    MatN pw = identity_matrix(F, 5);
    for (auto c : cp) {
      acc = mat_add(F, acc, mat_scale(F, pw, c));
      pw = mat_mul(F, pw, A);
    }
    EXPECT_EQ(acc, zero_matrix(F, 5, 5));
  }
}

TEST(Matrix, PolyRingCharpolyOfCompanion) {
  const Field F = Field::of_order(3);
  const PolyRing R(F);
  // det(t·I − C) for the companion matrix of x^3 + x + 2 equals the polynomial.
  Matrix<Poly> M(3, 3, R.zero());
  const Poly t = Poly::x(F);
  for (std::size_t i = 0; i < 3; ++i) M(i, i) = t;
  M(1, 0) = Poly::constant(F, F.neg(F.one()));
  M(2, 1) = Poly::constant(F, F.neg(F.one()));
  M(0, 2) = Poly::from_ints(F, {2});
  M(1, 2) = Poly::from_ints(F, {1});
  EXPECT_EQ(determinant(R, M), Poly::from_ints(F, {2, 1, 0, 1}));
}

TEST(Linalg, SolveAffine) {
  const Field F = Field::of_order(7);
  MatN A(2, 4, F.zero());
  A(0, 0) = F.one();
  A(0, 2) = F.from_int(3);
  A(1, 1) = F.from_int(2);
  A(1, 3) = F.one();
  auto sol = solve_affine(F, A, {F.from_int(1), F.from_int(5)});
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->kernel.size(), 2u);
  auto check = [&](const Vec& x, FieldElem r0, FieldElem r1) {
    FieldElem a0 = F.zero(), a1 = F.zero();
    for (std::size_t k = 0; k < 4; ++k) {
      a0 = F.add(a0, F.mul(A(0, k), x[k]));
      a1 = F.add(a1, F.mul(A(1, k), x[k]));
    }
    EXPECT_EQ(a0, r0);
    EXPECT_EQ(a1, r1);
  };
  check(sol->particular, F.from_int(1), F.from_int(5));
  for (const auto& k : sol->kernel) check(k, F.zero(), F.zero());
  MatN B(2, 1, F.zero());
  B(0, 0) = F.one();
  B(1, 0) = F.one();
  EXPECT_FALSE(solve_affine(F, B, {F.one(), F.from_int(2)}).has_value());
}

TEST(Linalg, InverseAndRank) {
  const Field F = Field::of_order(9);
  MatN A = identity_matrix(F, 3);
  A(0, 1) = F.element(4);
  A(2, 0) = F.element(7);
  auto inv = inverse(F, A);
  ASSERT_TRUE(inv);
  EXPECT_EQ(mat_mul(F, A, *inv), identity_matrix(F, 3));
  MatN S(3, 3, F.one());
  EXPECT_EQ(rank(F, S), 1u);
  EXPECT_FALSE(inverse(F, S).has_value());
}

TEST(Jet, RingOps) {
  const Field F = Field::of_order(5);
  const JetRing J(F);
  const JetElem a = J.make(F.from_int(2), F.from_int(3));
  const JetElem b = J.inv(a);
  EXPECT_EQ(J.mul(a, b), J.one());
  EXPECT_EQ(J.valuation(J.make(F.zero(), F.one())), 1u);
  EXPECT_THROW(J.inv(J.make(F.zero(), F.one())), DomainError);
  EXPECT_THROW(JetRing(F, 3), DomainError);
}

TEST(Extension, EmbeddingIsAHomomorphism) {
  const Field small = Field::of_order(9);
  const Field big = extension_with_at_least(small, 500);
  EXPECT_EQ(big.characteristic(), 3u);
  EXPECT_EQ(big.degree() % 2, 0u);
  const FieldEmbedding emb(small, big);
  for (auto a : small.elements()) {
    EXPECT_EQ(emb.pull(emb.push(a)), a);
    for (auto b : small.elements()) {
      EXPECT_EQ(emb.push(small.add(a, b)), big.add(emb.push(a), emb.push(b)));
      EXPECT_EQ(emb.push(small.mul(a, b)), big.mul(emb.push(a), emb.push(b)));
    }
  }
}

TEST(Extension, InterpolationRecoversCoefficients) {
  const Field F = Field::of_order(27);
  const Interpolator interp(F, 6);
  std::vector<FieldElem> c{F.element(3), F.element(0), F.element(26), F.element(5), F.element(1), F.element(9)};
  Poly p(F, c);
  std::vector<FieldElem> vals;
  for (auto x : interp.points()) vals.push_back(p.eval(x));
  EXPECT_EQ(interp.coefficients(vals), c);
}
