#pragma once

#include "selmerlab/algebra/poly.hpp"

namespace selmerlab::algebra {

// Ring context for F_q[t], for the generic matrix algorithms.
class PolyRing {
 public:
  using Elem = Poly;

  explicit PolyRing(Field f) : f_(std::move(f)) {}
  const Field& field() const { return f_; }

  Poly zero() const { return Poly(f_); }
  Poly one() const { return Poly::constant(f_, f_.one()); }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly sub(const Poly& a, const Poly& b) const { return a - b; }
  Poly neg(const Poly& a) const { return -a; }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
  bool is_zero(const Poly& a) const { return a.is_zero(); }

 private:
  Field f_;
};

}  // namespace selmerlab::algebra
