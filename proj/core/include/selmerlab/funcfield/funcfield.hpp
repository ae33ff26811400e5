#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "selmerlab/algebra/poly.hpp"
#include "selmerlab/support/bigint.hpp"

namespace selmerlab::funcfield {

using algebra::Field;
using algebra::FieldElem;
using algebra::Poly;

// A closed point of P^1 over F_q: a monic irreducible in F_q[t], or ∞.
class Place {
 public:
  static Place infinity() { return Place(); }
  static Place finite(Poly prime);

  bool is_infinity() const { return !prime_.has_value(); }
  const Poly& prime() const;
  std::size_t degree() const { return prime_ ? prime_->degree().value() : 1; }
  friend bool operator==(const Place& a, const Place& b);

 private:
  Place() = default;
  std::optional<Poly> prime_;
};
bool operator<(const Place& a, const Place& b);

// num/den in lowest terms with den monic.
struct RationalFunction {
  Poly num;
  Poly den;

  explicit RationalFunction(Poly p);
  RationalFunction(Poly n, Poly d);
  bool is_zero() const { return num.is_zero(); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

// Order of vanishing; nullopt for the zero function.
std::optional<std::int64_t> val(const Poly& f, const Place& v);
std::optional<std::int64_t> val(const RationalFunction& f, const Place& v);

struct PlaceExponent {
  Place place;
  std::int64_t exponent;
};

// Minimal integral model over P^1 with F_H = O(height): sections[k] is c_{k+2}
// as a polynomial in t of degree ≤ (k+2)·height.
struct MinimalModel {
  unsigned n = 1;
  std::int64_t height = 0;
  std::vector<PlaceExponent> exponents;  // nonzero n_v only
  std::vector<Poly> sections;

  const Poly& c(unsigned i) const { return sections.at(i - 2); }
};

MinimalModel minimal_model(unsigned n, const std::vector<RationalFunction>& c);
MinimalModel minimal_model(unsigned n, const std::vector<Poly>& c);
// Sections of degree ≤ i·d taken as they are, without re-minimizing.
MinimalModel model_from_sections(unsigned n, std::int64_t d, std::vector<Poly> sections);
// Some c_i fails to vanish to order i at every place, ∞ included.
bool is_minimal(const MinimalModel& m);

// Δ(t) of x^{2n+2} + Σ c_i(t) x^{2n+2-i}.
Poly discriminant_in_t(const Field& F, unsigned n, const std::vector<Poly>& sections);
std::uint64_t discriminant_degree_bound(unsigned n, std::int64_t d);

struct TransversalityReport {
  bool transversal = false;
  bool finite_squarefree = false;
  std::uint64_t order_at_infinity = 0;
};
// Throws DomainError when Δ ≡ 0.
TransversalityReport transversality(const MinimalModel& m);
bool is_transversal(const MinimalModel& m);

// |{λ ∈ F_q^× : λ^i c_i = c_i for all i}|
std::uint64_t aut_order(const MinimalModel& m);

// q^{(2(n+1)²+n)d + (2n+1)(1−g)}
Rational curve_count(std::int64_t d, std::int64_t g, unsigned n, std::uint64_t q);

// Polynomial in x with coefficients in F_q[t]; coeffs[k] multiplies x^k.
struct PolyOverT {
  std::vector<Poly> coeffs;
  friend bool operator==(const PolyOverT&, const PolyOverT&) = default;
};
PolyOverT model_polynomial(const MinimalModel& m);

struct TorsionWitness {
  enum class Kind { even_factorization, conjugate_pair } kind;
  PolyOverT first;   // g, or h_+ = x^{n+1} + A(x)
  PolyOverT second;  // h, or B(x)
  Poly radicand;     // D with h = x^{n+1} + A + √D·B; zero for even factorizations
};

inline constexpr std::uint64_t kDefaultTorsionSearchCap = 50'000'000;

std::optional<TorsionWitness> rational_2torsion_scan(const MinimalModel& m,
                                                     std::uint64_t cap = kDefaultTorsionSearchCap);

// Radicands used for the conjugate-pair search: the smallest non-square
// constant and t.
std::vector<Poly> torsion_radicands(const Field& F);

struct TorsionCensus {
  std::uint64_t even_factorization = 0;
  std::uint64_t conjugate_pair = 0;
  std::uint64_t total = 0;  // distinct tuples with Δ ≠ 0 having either witness
  Rational bound;           // the two-case bound at (n, q, d), g = 0
};

// All tuples (c_2..c_{2n+2}) with deg c_i ≤ i·d and Δ ≠ 0 that admit a
// rational 2-torsion witness, found by enumerating products.
TorsionCensus rational_2torsion_census(const Field& F, unsigned n, std::int64_t d,
                                       std::uint64_t cap = kDefaultTorsionSearchCap);
Rational rational_2torsion_bound(unsigned n, std::uint64_t q, std::int64_t d, std::int64_t g = 0);

}  // namespace selmerlab::funcfield
