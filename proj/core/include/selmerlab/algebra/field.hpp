#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace selmerlab::algebra {

// An element of F_{p^r}, stored as its index: the base-p digits of the index
// are the coefficients of the representing polynomial, lowest degree first.
struct FieldElem {
  std::uint32_t v = 0;
  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

namespace detail {
struct FieldData;
}

// Cheap handle to an immutable finite field of odd characteristic.
class Field {
 public:
  using Elem = FieldElem;

  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  // Rejects p = 2, non-primes, r = 0 and fields larger than kMaxOrder.
  static Field make(std::uint32_t p, std::uint32_t r = 1);
  // Same as make() but takes the field size.
  static Field of_order(std::uint64_t q);

  std::uint32_t characteristic() const;
  std::uint32_t degree() const;
  std::uint32_t order() const;
  // Monic modulus, coefficients low to high. {0, 1} (i.e. x) for prime fields.
  const std::vector<std::uint32_t>& modulus() const;

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem element(std::uint64_t index) const;
  FieldElem from_int(std::int64_t value) const;
  std::vector<FieldElem> elements() const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  FieldElem half() const;

  bool is_zero(FieldElem a) const { return a.v == 0; }
  bool is_square(FieldElem a) const;
  std::optional<FieldElem> sqrt(FieldElem a) const;
  // The non-square of smallest index.
  FieldElem nonsquare() const;
  FieldElem frobenius(FieldElem a) const;
  FieldElem primitive_element() const;
  // Discrete log base primitive_element(); a must be nonzero.
  std::uint32_t log(FieldElem a) const;

  // Map an integer residue to {-(p-1)/2..(p-1)/2}; a must lie in the prime field.
  std::int64_t centered_prime_value(FieldElem a) const;

  std::string to_string(FieldElem a) const;

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_ || a.same_as(b); }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
  bool same_as(const Field& other) const;
  std::shared_ptr<const detail::FieldData> data_;
};

bool is_prime(std::uint64_t n);
// Returns (p, r) with q = p^r, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

}  // namespace selmerlab::algebra
