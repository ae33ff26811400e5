#include <gtest/gtest.h>

#include <set>

#include "selmerlab/quadspace/quadspace.hpp"
#include "selmerlab/support/errors.hpp"

using namespace selmerlab;
using namespace selmerlab::algebra;
using namespace selmerlab::quadspace;

TEST(QuadSpace, GroupOrderSmallCases) {
  // |SO⁺_4(F_q)| = q²(q²−1)²
  for (std::uint64_t q : {3u, 5u, 7u, 9u}) {
    EXPECT_EQ(group_order(2, q).so_order, BigInt(q * q * (q * q - 1) * (q * q - 1)));
    EXPECT_EQ(group_order(2, q).dim_g, 6u);
  }
  EXPECT_EQ(group_order(3, 3).dim_g, 15u);
}

TEST(QuadSpace, EnumeratedSOHasExpectedSizeAndIsAGroup) {
  for (std::uint32_t q : {3u, 5u}) {
    const Field F = Field::of_order(q);
    const auto so = enumerate_special_orthogonal(F, 1);
    EXPECT_EQ(BigInt(so.size()), group_order(2, q).so_order);
    std::set<std::vector<FieldElem>> members;
    for (const auto& g : so) {
      EXPECT_EQ(multiplier(F, g), F.one());
      EXPECT_EQ(det(F, g), F.one());
      members.insert(g.data());
    }
    EXPECT_EQ(members.size(), so.size());
    // Closed under products (sampled).
    for (std::size_t i = 0; i < so.size(); i += so.size() / 23 + 1)
      for (std::size_t j = 0; j < so.size(); j += so.size() / 19 + 1)
        EXPECT_TRUE(members.count(mat_mul(F, so[i], so[j]).data()));
  }
}

TEST(QuadSpace, GClassesAreDistinctAndActionPreservesV) {
  const Field F = Field::of_order(3);
  const auto G = enumerate_G(F, 1);
  EXPECT_EQ(BigInt(G.size()), group_order(2, 3).g_order);
  std::set<std::vector<FieldElem>> seen;
  for (const auto& g : G) {
    auto s = similitude(F, g);
    EXPECT_EQ(gclass_of(F, s), g);
    // Scalar multiples give the same class.
    EXPECT_EQ(gclass_of(F, mat_scale(F, s, F.from_int(2))), g);
    auto key = g.rotation.data();
    key.push_back(FieldElem{g.nonsquare_multiplier ? 1u : 0u});
    seen.insert(key);
  }
  EXPECT_EQ(seen.size(), G.size());

  MatN T(4, 4, F.zero());
  for (std::size_t i = 0; i + 1 < 4; ++i) T(i + 1, i) = F.one();
  T(0, 3) = F.from_int(1);
  T(0, 2) = F.from_int(2);
  T(1, 3) = F.from_int(2);
  ASSERT_TRUE(is_in_V(F, T));
  for (std::size_t i = 0; i < G.size(); i += 37) {
    auto gT = act(F, similitude(F, G[i]), T);
    EXPECT_TRUE(is_in_V(F, gT));
    EXPECT_EQ(charpoly(F, gT), charpoly(F, T));
  }
}

TEST(QuadSpace, AdjointIsAnInvolutionReversingProducts) {
  const Field F = Field::of_order(5);
  MatN A(4, 4, F.zero()), B(4, 4, F.zero());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      A(i, j) = F.from_int(static_cast<std::int64_t>(i * 3 + j));
      B(i, j) = F.from_int(static_cast<std::int64_t>(i + 7 * j + 1));
    }
  EXPECT_EQ(adjoint(adjoint(A)), A);
  EXPECT_EQ(adjoint(mat_mul(F, A, B)), mat_mul(F, adjoint(B), adjoint(A)));
  // ⟨Au, v⟩ = ⟨u, A*v⟩
  std::vector<FieldElem> u{F.from_int(1), F.from_int(2), F.from_int(0), F.from_int(4)};
  std::vector<FieldElem> v{F.from_int(3), F.from_int(3), F.from_int(1), F.from_int(2)};
  auto apply = [&](const MatN& M, const std::vector<FieldElem>& x) {
    std::vector<FieldElem> y(4, F.zero());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) y[i] = F.add(y[i], F.mul(M(i, k), x[k]));
    return y;
  };
  EXPECT_EQ(pairing(F, apply(A, u), v), pairing(F, u, apply(adjoint(A), v)));
}

TEST(QuadSpace, CapIsEnforced) {
  const Field F = Field::of_order(5);
  EXPECT_THROW(enumerate_G(F, 1, 1000), CapExceeded);
}
