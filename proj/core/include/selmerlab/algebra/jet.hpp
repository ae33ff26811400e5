#pragma once

#include "selmerlab/algebra/field.hpp"

namespace selmerlab::algebra {

// a0 + a1·ε in F_q[ε]/(ε²).
struct JetElem {
  FieldElem a0;
  FieldElem a1;
  friend constexpr bool operator==(const JetElem&, const JetElem&) = default;
};

// Ring context for F_q[ε]/(ε^m). Only m = 2 is supported: every density in
// the library is a mod-ϖ² condition.
class JetRing {
 public:
  using Elem = JetElem;

  explicit JetRing(Field f, unsigned order = 2);

  const Field& field() const { return f_; }
  unsigned order() const { return 2; }

  JetElem zero() const { return {f_.zero(), f_.zero()}; }
  JetElem one() const { return {f_.one(), f_.zero()}; }
  JetElem lift(FieldElem a) const { return {a, f_.zero()}; }
  JetElem make(FieldElem a0, FieldElem a1) const { return {a0, a1}; }

  JetElem add(JetElem a, JetElem b) const { return {f_.add(a.a0, b.a0), f_.add(a.a1, b.a1)}; }
  JetElem sub(JetElem a, JetElem b) const { return {f_.sub(a.a0, b.a0), f_.sub(a.a1, b.a1)}; }
  JetElem neg(JetElem a) const { return {f_.neg(a.a0), f_.neg(a.a1)}; }
  JetElem mul(JetElem a, JetElem b) const {
    return {f_.mul(a.a0, b.a0), f_.add(f_.mul(a.a0, b.a1), f_.mul(a.a1, b.a0))};
  }
  bool is_zero(JetElem a) const { return a.a0.v == 0 && a.a1.v == 0; }
  bool is_unit(JetElem a) const { return a.a0.v != 0; }
  // Throws DomainError on non-units.
  JetElem inv(JetElem a) const;
  // ε-adic valuation: 0, 1, or 2 for zero.
  unsigned valuation(JetElem a) const { return a.a0.v != 0 ? 0 : (a.a1.v != 0 ? 1 : 2); }

 private:
  Field f_;
};

}  // namespace selmerlab::algebra
