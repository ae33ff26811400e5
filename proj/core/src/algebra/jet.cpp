#include "selmerlab/algebra/jet.hpp"

#include "selmerlab/support/errors.hpp"

namespace selmerlab::algebra {

JetRing::JetRing(Field f, unsigned order) : f_(std::move(f)) {
  require(order == 2, "only jets modulo ε² are supported");
}

JetElem JetRing::inv(JetElem a) const {
  require(is_unit(a), "inverse of a non-unit jet");
  const FieldElem i0 = f_.inv(a.a0);
  // (a0 + a1ε)^{-1} = a0^{-1} − a1·a0^{-2}ε
  return {i0, f_.neg(f_.mul(a.a1, f_.mul(i0, i0)))};
}

}  // namespace selmerlab::algebra
