#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/support/bigint.hpp"

namespace selmerlab::quadspace {

using algebra::Field;
using algebra::FieldElem;
using algebra::MatN;

// The split quadratic space of dimension 2n+2 with anti-identity Gram matrix.
struct QuadSpace {
  unsigned n = 1;
  std::size_t dim() const { return 2 * static_cast<std::size_t>(n) + 2; }
};

MatN gram(const Field& F, std::size_t N);
// Ǧ·Tᵗ·Ǧ, i.e. the flip across the anti-diagonal.
MatN adjoint(const MatN& T);
bool is_in_V(const Field& F, const MatN& T);
// μ with g·g* = μ·Id, or nullopt when g is not a similitude.
std::optional<FieldElem> multiplier(const Field& F, const MatN& g);
// diag(a,…,a,1,…,1) with the first N/2 entries equal to a.
MatN tau(const Field& F, std::size_t N, FieldElem a);
// B(u, v) = uᵗ·Ǧ·v
FieldElem pairing(const Field& F, const std::vector<FieldElem>& u, const std::vector<FieldElem>& v);

struct GroupOrder {
  BigInt so_order;  // |SO⁺_{2m}(F_q)|
  BigInt g_order;   // |G(F_q)|, G = PSO(2m)
  unsigned dim_g = 0;
};
GroupOrder group_order(unsigned m, std::uint64_t q);
// |G(F_q)|/q^{dim G}
Rational group_volume(unsigned m, std::uint64_t q);

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

// An element of G(F_q) = GSO(F_q)/F_q^×, stored as the similitude
// τ_a·rotation with a ∈ {1, fixed non-square} and rotation ∈ SO(F_q) chosen
// between ±rotation so that its first nonzero entry has the smaller index.
struct GClass {
  bool nonsquare_multiplier = false;
  MatN rotation;

  friend bool operator==(const GClass&, const GClass&) = default;
};
bool operator<(const GClass& a, const GClass& b);

MatN similitude(const Field& F, const GClass& g);
// Throws DomainError when g is not a proper similitude.
GClass gclass_of(const Field& F, const MatN& g);
// g·T·g^{-1}
MatN act(const Field& F, const MatN& g, const MatN& T);

// Column-by-column construction of SO(F_q) with Gram constraints.
void for_each_special_orthogonal(const Field& F, unsigned n, std::uint64_t cap,
                                 const std::function<void(const MatN&)>& visit);
std::vector<MatN> enumerate_special_orthogonal(const Field& F, unsigned n, std::uint64_t cap = kDefaultEnumerationCap);
std::vector<GClass> enumerate_G(const Field& F, unsigned n, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace selmerlab::quadspace
