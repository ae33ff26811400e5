#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "selmerlab/support/bigint.hpp"

namespace selmerlab::zeta {

inline constexpr unsigned kDefaultTruncation = 30;

// Either P^1 over F_q (closed form) or a curve given by its point counts
// N_1, N_2, ... over F_{q^m}. For supplied counts the genus is needed to bound
// the places beyond the supplied range.
struct ZetaContext {
  std::uint64_t q = 0;
  std::vector<BigInt> point_counts;  // empty for P^1
  unsigned genus = 0;
  unsigned truncation = kDefaultTruncation;

  static ZetaContext projective_line(std::uint64_t q, unsigned truncation = kDefaultTruncation);
  static ZetaContext from_point_counts(std::uint64_t q, std::vector<BigInt> counts, unsigned genus,
                                       unsigned truncation = 0);
  bool is_projective_line() const { return point_counts.empty(); }
};

int moebius(std::uint64_t n);
// Monic irreducibles of degree r over F_q.
BigInt irreducible_count(std::uint64_t q, unsigned r);
// Closed points of degree r on P^1.
BigInt closed_points(std::uint64_t q, unsigned r);
BigInt closed_points(const ZetaContext& ctx, unsigned r);

// 1/((1 − q^{−s})(1 − q^{1−s})), exactly.
Rational zeta_value(std::uint64_t q, unsigned s);

struct RealValue {
  long double value = 0;
  long double error_bound = 0;  // |true − value| ≤ error_bound
};
// Exact for P^1 (error 0); truncated Euler product with a tail bound otherwise.
RealValue zeta_value(const ZetaContext& ctx, unsigned s);

// Local factor at a place of degree r, as a function of x = q^{−r}. The
// callback returns factor − 1 so that tiny deviations keep full precision. The
// family must satisfy |factor − 1| ≤ decay_constant·x^decay_order, decay_order ≥ 2.
struct FactorFamily {
  std::string name;
  std::function<long double(unsigned degree, long double x)> excess;
  unsigned decay_order = 2;
  long double decay_constant = 1;
};

FactorFamily one_plus_power(unsigned k);
FactorFamily one_minus_power(unsigned k);
// ∏_{s} (1 − x^s)^{−1} over the given exponents: the local factor of a product of zeta values.
FactorFamily inverse_zeta_factors(std::vector<unsigned> exponents);
// 1 − α_r with α tabulated by place degree (the last entry is reused beyond
// the table); |α_r| ≤ bound·x² must hold.
FactorFamily one_minus_tabulated(std::vector<long double> alpha_by_degree, long double bound);

struct EulerProduct {
  long double value = 0;
  long double error_bound = 0;
  std::vector<long double> partial_products;  // after each place degree
};
// Throws DomainError when the family is not 1 + O(x²) on low-degree places.
EulerProduct euler_product(const ZetaContext& ctx, const FactorFamily& family);

struct AverageConstants {
  unsigned n = 1;
  std::uint64_t q = 0;
  Rational upper_bound_closed;        // 4·ζ(n+1)/ζ(2n+2) + 2
  EulerProduct upper_bound_euler;     // 4·∏(1 + q_v^{−n−1}) + 2
  Rational tamagawa_closed;           // 4·ζ(n+1)·∏_{i ≤ n} ζ(2i)
  EulerProduct tamagawa_euler;        // same constant place by place
  Rational minimality;                // ζ((n+2)(2n+1))^{−1}
  unsigned transversal_limit = 6;
  unsigned semistable_limit = 6;
  unsigned dim_v = 0;                 // (2n+3)(n+1) − 1
  unsigned dim_g = 0;                 // (n+1)(2n+1)
};
// q only enters through closed forms, so any q ≥ 2 is accepted (the large-q
// limit is probed at non-prime-power values).
AverageConstants average_constants(unsigned n, std::uint64_t q, unsigned truncation = kDefaultTruncation);

}  // namespace selmerlab::zeta
