#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "selmerlab/algebra/field.hpp"
#include "selmerlab/algebra/poly.hpp"

namespace selmerlab::algebra {

// The smallest extension of `base` (as a field F_{p^{rk}}) with at least
// `min_size` elements.
Field extension_with_at_least(const Field& base, std::uint64_t min_size);

// A fixed embedding of a small field into an extension of it. The generator of
// the small field is sent to the smallest-index root of its modulus.
class FieldEmbedding {
 public:
  FieldEmbedding(Field small, Field big);

  const Field& small() const { return small_; }
  const Field& big() const { return big_; }
  FieldElem push(FieldElem a) const { return image_[a.v]; }
  // nullopt when the element is outside the image.
  std::optional<FieldElem> pull(FieldElem b) const;

 private:
  Field small_;
  Field big_;
  std::vector<FieldElem> image_;
  std::vector<std::uint32_t> preimage_;  // small index + 1, or 0
};

// Coefficients of the unique polynomial of degree < points.size() with given
// values, via a precomputed inverse Vandermonde matrix.
class Interpolator {
 public:
  Interpolator(Field f, std::size_t npoints);

  const std::vector<FieldElem>& points() const { return points_; }
  std::vector<FieldElem> coefficients(const std::vector<FieldElem>& values) const;

 private:
  Field f_;
  std::vector<FieldElem> points_;
  std::vector<FieldElem> inverse_;  // row-major npoints × npoints
};

}  // namespace selmerlab::algebra
