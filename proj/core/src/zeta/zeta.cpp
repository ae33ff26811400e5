#include "selmerlab/zeta/zeta.hpp"

#include <cmath>
#include <limits>

#include "selmerlab/support/errors.hpp"

namespace selmerlab::zeta {

namespace {

void check_q(std::uint64_t q) { require(q >= 2, "q must be at least 2"); }

long double to_ld(const BigInt& v) { return v.convert_to<long double>(); }

}  // namespace

ZetaContext ZetaContext::projective_line(std::uint64_t q, unsigned truncation) {
  check_q(q);
  require(truncation >= 1, "truncation degree must be at least 1");
  ZetaContext ctx;
  ctx.q = q;
  ctx.truncation = truncation;
  return ctx;
}

ZetaContext ZetaContext::from_point_counts(std::uint64_t q, std::vector<BigInt> counts, unsigned genus,
                                           unsigned truncation) {
  check_q(q);
  require(!counts.empty(), "need at least N_1");
  ZetaContext ctx;
  ctx.q = q;
  ctx.genus = genus;
  ctx.truncation = truncation == 0 ? static_cast<unsigned>(counts.size()) : truncation;
  require(ctx.truncation <= counts.size(), "truncation degree exceeds the supplied point counts");
  ctx.point_counts = std::move(counts);
  for (unsigned r = 1; r <= ctx.truncation; ++r)
    require(closed_points(ctx, r) >= 0, "point counts give a negative number of closed points");
  return ctx;
}

int moebius(std::uint64_t n) {
  require(n >= 1, "moebius needs n ≥ 1");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

BigInt irreducible_count(std::uint64_t q, unsigned r) {
  check_q(q);
  require(r >= 1, "degree must be positive");
  BigInt sum = 0;
  for (unsigned e = 1; e <= r; ++e)
    if (r % e == 0) sum += moebius(e) * big_pow(q, r / e);
  return sum / r;
}

BigInt closed_points(std::uint64_t q, unsigned r) { return irreducible_count(q, r) + (r == 1 ? 1 : 0); }

BigInt closed_points(const ZetaContext& ctx, unsigned r) {
  if (ctx.is_projective_line()) return closed_points(ctx.q, r);
  require(r >= 1 && r <= ctx.point_counts.size(), "closed-point degree outside the supplied counts");
  BigInt sum = 0;
  for (unsigned e = 1; e <= r; ++e)
    if (r % e == 0) sum += moebius(r / e) * ctx.point_counts[e - 1];
  ensure(sum % r == 0, "point counts are not consistent with any curve");
  return sum / r;
}

Rational zeta_value(std::uint64_t q, unsigned s) {
  check_q(q);
  require(s >= 2, "ζ(s) diverges for s ≤ 1");
  return 1 / ((1 - rational_pow(q, -static_cast<std::int64_t>(s))) * (1 - rational_pow(q, 1 - static_cast<std::int64_t>(s))));
}

RealValue zeta_value(const ZetaContext& ctx, unsigned s) {
  require(s >= 2, "ζ(s) diverges for s ≤ 1");
  if (ctx.is_projective_line()) return {to_long_double(zeta_value(ctx.q, s)), 0};
  const auto prod = euler_product(ctx, inverse_zeta_factors({s}));
  return {prod.value, prod.error_bound};
}

FactorFamily one_plus_power(unsigned k) {
  return {"1+x^" + std::to_string(k), [k](unsigned, long double x) { return std::pow(x, static_cast<long double>(k)); },
          k, 1};
}

FactorFamily one_minus_power(unsigned k) {
  return {"1-x^" + std::to_string(k), [k](unsigned, long double x) { return -std::pow(x, static_cast<long double>(k)); },
          k, 1};
}

FactorFamily inverse_zeta_factors(std::vector<unsigned> exponents) {
  require(!exponents.empty(), "need at least one exponent");
  unsigned order = exponents.front();
  std::string name = "zeta";
  for (unsigned s : exponents) {
    order = std::min(order, s);
    name += ":" + std::to_string(s);
  }
  const long double constant = 4.0L * static_cast<long double>(exponents.size());
  return {name,
          [exponents](unsigned, long double x) {
            long double log_f = 0;
            for (unsigned s : exponents) log_f -= std::log1p(-std::pow(x, static_cast<long double>(s)));
            return std::expm1(log_f);
          },
          order, constant};
}

FactorFamily one_minus_tabulated(std::vector<long double> alpha_by_degree, long double bound) {
  require(!alpha_by_degree.empty(), "need at least one tabulated value");
  return {"1-alpha",
          [table = std::move(alpha_by_degree)](unsigned r, long double) {
            return -table[std::min<std::size_t>(r, table.size()) - 1];
          },
          2, bound};
}

EulerProduct euler_product(const ZetaContext& ctx, const FactorFamily& family) {
  const long double q = static_cast<long double>(ctx.q);
  if (family.decay_order < 2) throw DomainError("factor family " + family.name + " is not 1 + O(x^2)");
  for (unsigned r = 1; r <= 3; ++r) {
    const long double x = std::pow(q, -static_cast<long double>(r));
    const long double allowed = family.decay_constant * std::pow(x, static_cast<long double>(family.decay_order));
    if (std::fabs(family.excess(r, x)) > allowed * (1 + 1e-12L))
      throw DomainError("factor family " + family.name + " diverges: degree-" + std::to_string(r) +
                        " factor exceeds its decay bound");
  }

  EulerProduct out;
  long double log_sum = 0;
  for (unsigned r = 1; r <= ctx.truncation; ++r) {
    const long double x = std::pow(q, -static_cast<long double>(r));
    const long double excess = family.excess(r, x);
    require(excess > -1, "local factors must be positive");
    log_sum += to_ld(closed_points(ctx, r)) * std::log1p(excess);
    out.partial_products.push_back(std::exp(log_sum));
  }
  out.value = out.partial_products.back();

  // Beyond the truncation: P_r ≤ (2 + 2g)·q^r and |log f| ≤ 2C·x^k once Cx^k ≤ 1/2.
  const long double k = static_cast<long double>(family.decay_order);
  const long double ratio = std::pow(q, 1 - k);
  const long double first = std::pow(q, (static_cast<long double>(ctx.truncation) + 1) * (1 - k));
  ensure(family.decay_constant * std::pow(q, -(static_cast<long double>(ctx.truncation) + 1) * k) <= 0.5L,
         "truncation too shallow for the tail estimate");
  const long double tail = 2 * family.decay_constant * (2 + 2 * static_cast<long double>(ctx.genus)) * first / (1 - ratio);
  const long double rounding = 64 * std::numeric_limits<long double>::epsilon() * ctx.truncation;
  out.error_bound = out.value * (std::expm1(tail) + rounding);
  return out;
}

AverageConstants average_constants(unsigned n, std::uint64_t q, unsigned truncation) {
  require(n >= 1, "n must be at least 1");
  check_q(q);
  AverageConstants c;
  c.n = n;
  c.q = q;
  const auto ctx = ZetaContext::projective_line(q, truncation);

  c.upper_bound_closed = 4 * zeta_value(q, n + 1) / zeta_value(q, 2 * n + 2) + 2;
  c.upper_bound_euler = euler_product(ctx, one_plus_power(n + 1));
  c.upper_bound_euler.value = 4 * c.upper_bound_euler.value + 2;
  c.upper_bound_euler.error_bound *= 4;
  for (auto& p : c.upper_bound_euler.partial_products) p = 4 * p + 2;

  std::vector<unsigned> exponents{n + 1};
  c.tamagawa_closed = 4 * zeta_value(q, n + 1);
  for (unsigned i = 1; i <= n; ++i) {
    c.tamagawa_closed *= zeta_value(q, 2 * i);
    exponents.push_back(2 * i);
  }
  c.tamagawa_euler = euler_product(ctx, inverse_zeta_factors(exponents));
  c.tamagawa_euler.value *= 4;
  c.tamagawa_euler.error_bound *= 4;
  for (auto& p : c.tamagawa_euler.partial_products) p *= 4;

  c.minimality = 1 / zeta_value(q, (n + 2) * (2 * n + 1));
  c.dim_v = (2 * n + 3) * (n + 1) - 1;
  c.dim_g = (n + 1) * (2 * n + 1);
  return c;
}

}  // namespace selmerlab::zeta
