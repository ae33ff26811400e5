#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selmerlab/algebra/field.hpp"
#include "selmerlab/algebra/jet.hpp"
#include "selmerlab/algebra/poly.hpp"
#include "selmerlab/support/bigint.hpp"

namespace selmerlab::density {

using algebra::Field;
using algebra::FieldElem;

enum class Method { exhaustive, monte_carlo };
std::string_view method_name(Method m);

// Two-sided 99% normal quantile used for every reported half-width.
inline constexpr long double kZ99 = 2.5758293035489004L;

struct DensityReport {
  BigInt numerator = 0;
  BigInt denominator = 1;
  long double value = 0;
  Method method = Method::exhaustive;
  std::uint64_t samples = 0;
  long double sigma = 0;       // standard error (normal approximation)
  long double half_width = 0;  // kZ99 · sigma
  std::uint64_t seed = 0;

  Rational exact() const { return Rational(numerator, denominator); }
};

DensityReport exhaustive_report(BigInt numerator, BigInt denominator);
DensityReport sampled_report(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed);

inline constexpr std::uint64_t kDefaultExhaustiveCap = 200'000'000;
// Sampled densities refuse smaller runs.
inline constexpr std::uint64_t kMinSamples = 100'000;

// Δ of x^{2n+2} + Σ c_i x^{2n+2-i} over F_q[ε]/(ε²).
algebra::JetElem jet_discriminant(const algebra::JetRing& J, unsigned n, const std::vector<algebra::JetElem>& c);

// Fraction of S(F_q[ε]/ε²) with Δ ≡ 0 mod ε², by direct enumeration.
DensityReport alpha_v(const Field& F, unsigned n, unsigned workers = 1, std::uint64_t cap = kDefaultExhaustiveCap);
// Same number via the smooth/singular split of {Δ = 0} ⊂ S(F_q): smooth points
// have q^{2n} lifts with Δ ≡ 0, singular ones q^{2n+1}. Gradients are computed
// by univariate interpolation over an extension field.
DensityReport alpha_v_split(const Field& F, unsigned n, std::uint64_t cap = kDefaultExhaustiveCap);

// Fraction of V(F_q[ε]/ε²) with Δ(π(x)) ≡ 0 mod ε².
DensityReport beta_v(const Field& F, unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);
// Exact β: every x̄ ∈ V(F_q) with Δ(π(x̄)) = 0 contributes q^{dim V} or
// q^{dim V − 1} lifts depending on whether dΔ∘π vanishes at x̄.
DensityReport beta_v_exact(const Field& F, unsigned n, std::uint64_t cap = kDefaultExhaustiveCap);

// |G(F_q)|/q^{dim G}, the target of (1−β)/(1−α).
Rational ratio_target(unsigned n, std::uint64_t q);

struct RatioCheck {
  long double ratio = 0;
  long double sigma = 0;
  long double target = 0;
  bool within_3_sigma = false;
};
RatioCheck ratio_law(const DensityReport& alpha, const DensityReport& beta, unsigned n, std::uint64_t q);

struct RegularDensity {
  DensityReport report;  // c_v / q^{dim V}
  BigInt c_v = 0;
  BigInt lower_bound = 0;   // (# non-square fibers)·|G|
  BigInt upper_bound = 0;   // |G|·(q^{2n+1} + q^n)
  bool within_bounds = false;
};
RegularDensity regular_density(const Field& F, unsigned n, unsigned workers = 1, unsigned parts = 64);

struct MinimalityReport {
  DensityReport local;          // exhaustive over c_i mod ϖ^i at a degree-1 place
  Rational local_expected;      // 1 − q^{−(n+2)(2n+1)}
  DensityReport global;         // sampled minimal tuples at height d
  Rational global_expected;     // ζ_{P^1}((n+2)(2n+1))^{-1}
};
DensityReport minimality_local(const Field& F, unsigned n, std::uint64_t cap = kDefaultExhaustiveCap);
DensityReport minimality_global(const Field& F, unsigned n, std::int64_t d, std::uint64_t samples, std::uint64_t seed,
                                unsigned workers = 1);
// Exhaustive count of minimal tuples at height d (feasible only for tiny boxes).
DensityReport minimality_global_exhaustive(const Field& F, unsigned n, std::int64_t d,
                                           std::uint64_t cap = kDefaultExhaustiveCap);

struct SemistableCensus {
  std::uint64_t total = 0;
  std::uint64_t non_semistable = 0;
  std::uint64_t square = 0;
  std::uint64_t union_count = 0;
  std::uint64_t intersection_count = 0;
  // 1 − d_v/q^{2n+1} with d_v read as the intersection and as the union.
  Rational factor_intersection;
  Rational factor_union;
};
SemistableCensus semistable_census(const Field& F, unsigned n, std::uint64_t cap = kDefaultExhaustiveCap);

struct SquarefreeReport {
  DensityReport report;
  std::uint64_t degenerate = 0;          // Δ ≡ 0
  std::uint64_t finite_repeated = 0;     // Δ has a repeated finite root
  std::uint64_t infinity_too_deep = 0;   // finite part fine, order ≥ 2 at ∞
};
SquarefreeReport squarefree_disc_density(const Field& F, unsigned n, std::int64_t d, std::uint64_t samples,
                                         std::uint64_t seed, unsigned workers = 1);

}  // namespace selmerlab::density
