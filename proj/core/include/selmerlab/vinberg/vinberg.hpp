#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "selmerlab/algebra/poly.hpp"
#include "selmerlab/quadspace/quadspace.hpp"

namespace selmerlab::vinberg {

using algebra::Field;
using algebra::FieldElem;
using algebra::MatN;
using algebra::Poly;
using quadspace::GClass;

// (c_2, …, c_{2n+2}); coeffs[k] holds c_{k+2}.
struct Invariant {
  unsigned n = 1;
  std::vector<FieldElem> coeffs;

  FieldElem c(unsigned i) const { return coeffs.at(i - 2); }
  friend bool operator==(const Invariant&, const Invariant&) = default;
};

// x^{2n+2} + c_2 x^{2n} + … + c_{2n+2}
Poly characteristic_poly(const Field& F, const Invariant& c);
Invariant invariant_from_poly(const Poly& f);
// Base-q digits of the invariant, c_2 least significant.
std::uint64_t invariant_index(const Field& F, const Invariant& c);
Invariant invariant_at(const Field& F, unsigned n, std::uint64_t index);

// Coordinates on V: the anti-diagonal, pairs strictly above it, and the first
// n diagonal entries; the remaining diagonal entries follow from T = T* and
// trace zero.
unsigned dim_V(unsigned n);
MatN v_element(const Field& F, unsigned n, const std::vector<FieldElem>& coords);
MatN v_element_at(const Field& F, unsigned n, std::uint64_t index);

Invariant invariants_of(const Field& F, const MatN& T);
MatN kostant1(const Field& F, const Invariant& c);
MatN kostant2(const Field& F, const Invariant& c);
// The corner swap e_1 ↔ e_N.
MatN corner_swap(const Field& F, std::size_t N);
// Minimal polynomial equals the characteristic polynomial.
bool is_regular(const Field& F, const MatN& T);

// Irreducible-factor degrees with multiplicities, sorted.
struct FactorPattern {
  std::vector<std::pair<unsigned, unsigned>> parts;  // (degree, multiplicity)

  unsigned total_degree() const;
  bool squarefree() const;
  friend bool operator==(const FactorPattern&, const FactorPattern&) = default;
};
FactorPattern factor_pattern(const Poly& f);

std::uint64_t stabilizer_count_bruteforce(const Field& F, const MatN& T, const std::vector<GClass>& group);
std::uint64_t stabilizer_count_bruteforce(const Field& F, const MatN& T,
                                          std::uint64_t cap = quadspace::kDefaultEnumerationCap);
std::uint64_t stabilizer_count_formula(const FactorPattern& pattern);
// |J_f[2](F_q)| for the (possibly singular) curve y² = f, from its
// Weierstrass-point description.
std::uint64_t j2_count(const Poly& f, unsigned n);

struct FiberStats {
  std::uint64_t size = 0;
  std::uint64_t regular = 0;
};

struct FiberCensus {
  unsigned n = 1;
  std::uint32_t q = 0;
  std::vector<FiberStats> fibers;  // indexed by invariant_index
  std::uint64_t total_regular = 0;  // c_v
  std::uint64_t square_fibers = 0;
  std::uint64_t min_nonsquare_regular = 0;
  std::uint64_t max_nonsquare_regular = 0;
  std::uint64_t max_square_regular = 0;
};

inline constexpr std::uint64_t kDefaultCensusCap = 1'000'000'000;

FiberCensus fiber_census(const Field& F, unsigned n, unsigned workers = 1, std::uint64_t cap = kDefaultCensusCap,
                         unsigned parts = 64);

}  // namespace selmerlab::vinberg
