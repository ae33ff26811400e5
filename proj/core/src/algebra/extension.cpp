#include "selmerlab/algebra/extension.hpp"

#include "selmerlab/support/errors.hpp"

namespace selmerlab::algebra {

Field extension_with_at_least(const Field& base, std::uint64_t min_size) {
  std::uint32_t k = 1;
  std::uint64_t size = base.order();
  while (size < min_size) {
    size *= base.order();
    ++k;
    require(size <= Field::kMaxOrder, "evaluation field would be too large");
  }
  return Field::make(base.characteristic(), base.degree() * k);
}

FieldEmbedding::FieldEmbedding(Field small, Field big) : small_(std::move(small)), big_(std::move(big)) {
  require(small_.characteristic() == big_.characteristic(), "embedding between different characteristics");
  require(big_.degree() % small_.degree() == 0, "small field does not embed into big field");
  const auto& mod = small_.modulus();
  FieldElem gen = big_.zero();
  if (small_.degree() == 1) {
    gen = big_.one();  // unused: prime field elements map by index
  } else {
    bool found = false;
    for (std::uint32_t i = 0; i < big_.order() && !found; ++i) {
      FieldElem x{i};
      FieldElem acc = big_.zero();
      for (std::size_t k = mod.size(); k-- > 0;) acc = big_.add(big_.mul(acc, x), big_.from_int(mod[k]));
      if (acc.v == 0) {
        gen = x;
        found = true;
      }
    }
    ensure(found, "modulus of the small field has no root in the big field");
  }
  image_.resize(small_.order());
  preimage_.assign(big_.order(), 0);
  const std::uint32_t p = small_.characteristic();
  for (std::uint32_t a = 0; a < small_.order(); ++a) {
    FieldElem img = big_.zero();
    if (small_.degree() == 1) {
      img = big_.from_int(a);
    } else {
      std::uint32_t t = a;
      FieldElem pw = big_.one();
      for (std::uint32_t k = 0; k < small_.degree(); ++k) {
        img = big_.add(img, big_.mul(big_.from_int(t % p), pw));
        pw = big_.mul(pw, gen);
        t /= p;
      }
    }
    image_[a] = img;
    preimage_[img.v] = a + 1;
  }
}

std::optional<FieldElem> FieldEmbedding::pull(FieldElem b) const {
  const std::uint32_t v = preimage_[b.v];
  if (v == 0) return std::nullopt;
  return FieldElem{v - 1};
}

Interpolator::Interpolator(Field f, std::size_t npoints) : f_(std::move(f)) {
  require(npoints <= f_.order(), "not enough distinct interpolation points");
  const std::size_t n = npoints;
  points_.resize(n);
  for (std::size_t i = 0; i < n; ++i) points_[i] = f_.element(i);
  // Gauss-Jordan on [V | I].
  std::vector<FieldElem> aug(n * 2 * n, f_.zero());
  auto at = [&](std::size_t r, std::size_t c) -> FieldElem& { return aug[r * 2 * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    FieldElem pw = f_.one();
    for (std::size_t c = 0; c < n; ++c) {
      at(r, c) = pw;
      pw = f_.mul(pw, points_[r]);
    }
    at(r, n + r) = f_.one();
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && at(piv, c).v == 0) ++piv;
    ensure(piv < n, "singular Vandermonde matrix");
    if (piv != c)
      for (std::size_t k = 0; k < 2 * n; ++k) std::swap(at(piv, k), at(c, k));
    const FieldElem inv = f_.inv(at(c, c));
    for (std::size_t k = 0; k < 2 * n; ++k) at(c, k) = f_.mul(at(c, k), inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || at(r, c).v == 0) continue;
      const FieldElem factor = at(r, c);
      for (std::size_t k = 0; k < 2 * n; ++k) at(r, k) = f_.sub(at(r, k), f_.mul(factor, at(c, k)));
    }
  }
  inverse_.resize(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inverse_[r * n + c] = at(r, n + c);
}

std::vector<FieldElem> Interpolator::coefficients(const std::vector<FieldElem>& values) const {
  const std::size_t n = points_.size();
  require(values.size() == n, "wrong number of interpolation values");
  std::vector<FieldElem> out(n, f_.zero());
  for (std::size_t r = 0; r < n; ++r) {
    FieldElem acc = f_.zero();
    for (std::size_t c = 0; c < n; ++c) acc = f_.add(acc, f_.mul(inverse_[r * n + c], values[c]));
    out[r] = acc;
  }
  return out;
}

}  // namespace selmerlab::algebra
