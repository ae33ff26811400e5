#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "selmerlab/algebra/field.hpp"

namespace selmerlab::algebra {

// Polynomial degree with an explicit sentinel for the zero polynomial.
class Degree {
 public:
  static constexpr Degree minus_infinity() { return Degree(); }
  constexpr explicit Degree(std::size_t d) : value_(d) {}

  constexpr bool is_minus_infinity() const { return !value_.has_value(); }
  // Throws DomainError for the sentinel.
  std::size_t value() const;

  friend constexpr bool operator==(const Degree&, const Degree&) = default;
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (!a.value_ || !b.value_) return a.value_.has_value() <=> b.value_.has_value();
    return *a.value_ <=> *b.value_;
  }

 private:
  constexpr Degree() = default;
  std::optional<std::size_t> value_;
};

// Dense univariate polynomial over a finite field, coefficients low to high,
// never carrying trailing zeros.
class Poly {
 public:
  explicit Poly(Field f) : f_(std::move(f)) {}
  Poly(Field f, std::vector<FieldElem> coeffs);

  static Poly constant(Field f, FieldElem c);
  static Poly monomial(Field f, FieldElem c, std::size_t k);
  static Poly x(Field f) { return monomial(f, f.one(), 1); }
  // Integer coefficients reduced into the prime field, low to high.
  static Poly from_ints(Field f, std::initializer_list<std::int64_t> low_to_high);
  static Poly from_ints(Field f, const std::vector<std::int64_t>& low_to_high);

  const Field& field() const { return f_; }
  Degree degree() const { return c_.empty() ? Degree::minus_infinity() : Degree(c_.size() - 1); }
  // deg + 1, and 0 for the zero polynomial.
  std::size_t length() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == f_.one(); }
  bool is_monic() const { return !c_.empty() && c_.back() == f_.one(); }

  FieldElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
  FieldElem leading() const { return c_.empty() ? f_.zero() : c_.back(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }

  FieldElem eval(FieldElem at) const;
  Poly scaled(FieldElem s) const;
  Poly shifted(std::size_t k) const;  // times x^k

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string(char var = 'x') const;

 private:
  void normalize();
  Field f_;
  std::vector<FieldElem> c_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

DivMod divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

Poly monic(const Poly& a);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly derivative(const Poly& f);
Poly power(const Poly& base, std::uint64_t e);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus);
// Order on polynomials used for deterministic output: by length, then by
// coefficient indices from the top down.
bool poly_less(const Poly& a, const Poly& b);

// Res(a, b) computed with the actual degrees; for monic a this is ∏ b(α) over
// the roots α of a.
FieldElem resultant(const Poly& a, const Poly& b);
// (−1)^{N(N−1)/2}·Res(f, f′) for monic f of degree N ≥ 2.
FieldElem discriminant(const Poly& f);

struct FactorPower {
  Poly factor;
  unsigned multiplicity = 1;
  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

std::vector<FactorPower> squarefree_decomposition(const Poly& f);
bool is_squarefree(const Poly& f);
bool is_square_poly(const Poly& f);
bool is_semistable_poly(const Poly& f);

inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eed'f00d'c0ffeeULL;

// Complete factorisation of a monic polynomial into monic irreducibles.
std::vector<FactorPower> factor(const Poly& f, std::uint64_t seed = kDefaultFactorSeed);
bool is_irreducible(const Poly& f);
Poly expand(const std::vector<FactorPower>& factors, const Field& field);

}  // namespace selmerlab::algebra
