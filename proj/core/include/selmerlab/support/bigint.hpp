#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace selmerlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

// q^e for a possibly negative exponent, as an exact rational.
inline Rational rational_pow(std::uint64_t q, std::int64_t e) {
  if (e >= 0) return Rational(big_pow(q, static_cast<std::uint64_t>(e)));
  return Rational(BigInt(1), big_pow(q, static_cast<std::uint64_t>(-e)));
}

inline long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace selmerlab
