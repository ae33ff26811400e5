#include "selmerlab/algebra/poly.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "selmerlab/support/errors.hpp"

namespace selmerlab::algebra {

std::size_t Degree::value() const {
  if (!value_) throw DomainError("degree of the zero polynomial is -infinity");
  return *value_;
}

Poly::Poly(Field f, std::vector<FieldElem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { normalize(); }

void Poly::normalize() {
  while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

Poly Poly::constant(Field f, FieldElem c) { return Poly(std::move(f), {c}); }

Poly Poly::monomial(Field f, FieldElem c, std::size_t k) {
  std::vector<FieldElem> v(k + 1, f.zero());
  v[k] = c;
  return Poly(std::move(f), std::move(v));
}

Poly Poly::from_ints(Field f, std::initializer_list<std::int64_t> low_to_high) {
  return from_ints(std::move(f), std::vector<std::int64_t>(low_to_high));
}

Poly Poly::from_ints(Field f, const std::vector<std::int64_t>& low_to_high) {
  std::vector<FieldElem> v;
  v.reserve(low_to_high.size());
  for (auto c : low_to_high) v.push_back(f.from_int(c));
  return Poly(std::move(f), std::move(v));
}

FieldElem Poly::eval(FieldElem at) const {
  FieldElem acc = f_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, at), c_[i]);
  return acc;
}

Poly Poly::scaled(FieldElem s) const {
  std::vector<FieldElem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_.mul(c_[i], s);
  return Poly(f_, std::move(v));
}

Poly Poly::shifted(std::size_t k) const {
  if (c_.empty()) return *this;
  std::vector<FieldElem> v(k, f_.zero());
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(f_, std::move(v));
}

Poly Poly::operator-() const {
  std::vector<FieldElem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_.neg(c_[i]);
  return Poly(f_, std::move(v));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_.add(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_.sub(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field& f = a.f_;
  if (a.c_.empty() || b.c_.empty()) return Poly(f);
  std::vector<FieldElem> v(a.c_.size() + b.c_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].v == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = f.add(v[i + j], f.mul(a.c_[i], b.c_[j]));
  }
  return Poly(f, std::move(v));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

std::string Poly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].v == 0) continue;
    if (!out.empty()) out += " + ";
    const bool unit = c_[i] == f_.one();
    if (!unit || i == 0) out += f_.to_string(c_[i]);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

DivMod divmod(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  require(!b.is_zero(), "polynomial division by zero");
  if (a.length() < b.length()) return {Poly(f), a};
  std::vector<FieldElem> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<FieldElem> quo(rem.size() - db, f.zero());
  const FieldElem lead_inv = f.inv(bc.back());
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].v == 0) continue;
    const FieldElem c = f.mul(rem[k], lead_inv);
    quo[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] = f.sub(rem[k - db + i], f.mul(c, bc[i]));
  }
  rem.resize(db);
  return {Poly(f, std::move(quo)), Poly(f, std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return a.scaled(a.field().inv(a.leading()));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly derivative(const Poly& f) {
  const Field& F = f.field();
  if (f.length() <= 1) return Poly(F);
  std::vector<FieldElem> v(f.length() - 1);
  for (std::size_t i = 1; i < f.length(); ++i) v[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i % F.characteristic())), f.coeff(i));
  return Poly(F, std::move(v));
}

Poly power(const Poly& base, std::uint64_t e) {
  Poly r = Poly::constant(base.field(), base.field().one());
  Poly b = base;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  Poly r = Poly::constant(base.field(), base.field().one()) % modulus;
  Poly b = base % modulus;
  while (e) {
    if (e & 1) r = (r * b) % modulus;
    e >>= 1;
    if (e) b = (b * b) % modulus;
  }
  return r;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t i = a.length(); i-- > 0;) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

FieldElem resultant(const Poly& a0, const Poly& b0) {
  const Field& F = a0.field();
  if (a0.is_zero() || b0.is_zero()) return F.zero();
  Poly a = a0;
  Poly b = b0;
  FieldElem acc = F.one();
  while (true) {
    const std::size_t da = a.length() - 1;
    const std::size_t db = b.length() - 1;
    if (db == 0) return F.mul(acc, F.pow(b.leading(), da));
    if (da == 0) return F.mul(acc, F.pow(a.leading(), db));
    Poly r = a % b;
    if (r.is_zero()) return F.zero();
    const std::size_t dr = r.length() - 1;
    // Res(a, b) = (−1)^{da·db} lc(b)^{da − dr} Res(b, r)
    if ((da * db) % 2 == 1) acc = F.neg(acc);
    acc = F.mul(acc, F.pow(b.leading(), da - dr));
    a = std::move(b);
    b = std::move(r);
  }
}

FieldElem discriminant(const Poly& f) {
  require(f.is_monic(), "discriminant requires a monic polynomial");
  require(f.length() >= 3, "discriminant requires degree at least 2");
  const Field& F = f.field();
  const std::size_t n = f.length() - 1;
  FieldElem r = resultant(f, derivative(f));
  if ((n * (n - 1) / 2) % 2 == 1) r = F.neg(r);
  return r;
}

namespace {

// Inverse Frobenius on a polynomial all of whose exponents are multiples of p.
Poly pth_root(const Poly& f) {
  const Field& F = f.field();
  const std::uint32_t p = F.characteristic();
  std::uint64_t root_exp = 1;  // x ↦ x^{q/p} inverts x ↦ x^p
  for (std::uint32_t i = 1; i < F.degree(); ++i) root_exp *= p;
  std::vector<FieldElem> v((f.length() - 1) / p + 1, F.zero());
  for (std::size_t i = 0; i < f.length(); ++i) {
    if (f.coeff(i).v == 0) continue;
    ensure(i % p == 0, "p-th root of a non p-th power");
    v[i / p] = F.pow(f.coeff(i), root_exp);
  }
  return Poly(F, std::move(v));
}

void squarefree_into(const Poly& f, unsigned scale, std::vector<FactorPower>& out) {
  const Field& F = f.field();
  Poly c = gcd(f, derivative(f));
  Poly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (!fac.is_one()) out.push_back({monic(fac), i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) squarefree_into(monic(pth_root(c)), scale * F.characteristic(), out);
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly f) {
  const Field& F = f.field();
  std::vector<std::pair<Poly, unsigned>> out;
  const Poly x = Poly::x(F);
  Poly h = x % f;
  unsigned i = 1;
  while (f.length() - 1 >= 2 * i) {
    h = powmod(h, F.order(), f);
    Poly g = gcd(h - x, f);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
    ++i;
  }
  if (f.length() > 1) out.emplace_back(f, static_cast<unsigned>(f.length() - 1));
  return out;
}

void equal_degree(const Poly& g, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const Field& F = g.field();
  const std::size_t n = g.length() - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<std::uint32_t> coin(0, F.order() - 1);
  while (true) {
    std::vector<FieldElem> v(n);
    for (auto& e : v) e = FieldElem{coin(rng)};
    Poly a(F, std::move(v));
    if (a.is_constant()) continue;
    // a^{(q^d − 1)/2} = (a · a^q ⋯ a^{q^{d−1}})^{(q−1)/2}
    Poly t = a % g;
    Poly frob = t;
    for (unsigned j = 1; j < d; ++j) {
      frob = powmod(frob, F.order(), g);
      t = (t * frob) % g;
    }
    Poly b = powmod(t, (F.order() - 1) / 2, g);
    Poly split = gcd(b - Poly::constant(F, F.one()), g);
    if (split.length() > 1 && split.length() < g.length()) {
      equal_degree(split, d, rng, out);
      equal_degree(g / split, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FactorPower> squarefree_decomposition(const Poly& f) {
  require(!f.is_zero(), "squarefree decomposition of the zero polynomial");
  require(f.is_monic(), "squarefree decomposition requires a monic polynomial");
  std::vector<FactorPower> out;
  if (f.is_one()) return out;
  squarefree_into(f, 1, out);
  std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) { return a.multiplicity < b.multiplicity; });
  return out;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  return gcd(f, derivative(f)).is_one();
}

bool is_square_poly(const Poly& f) {
  require(f.is_monic(), "is_square_poly requires a monic polynomial");
  for (const auto& part : squarefree_decomposition(f))
    if (part.multiplicity % 2 != 0) return false;
  return true;
}

bool is_semistable_poly(const Poly& f) {
  require(f.is_monic(), "is_semistable_poly requires a monic polynomial");
  for (const auto& part : squarefree_decomposition(f))
    if (part.multiplicity > 2) return false;
  return true;
}

std::vector<FactorPower> factor(const Poly& f, std::uint64_t seed) {
  require(f.is_monic(), "factor requires a monic polynomial");
  std::mt19937_64 rng(seed);
  std::vector<FactorPower> out;
  for (const auto& part : squarefree_decomposition(f)) {
    for (auto& [block, d] : distinct_degree(part.factor)) {
      std::vector<Poly> pieces;
      equal_degree(block, d, rng, pieces);
      for (auto& p : pieces) out.push_back({std::move(p), part.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) {
    if (a.factor.length() != b.factor.length()) return a.factor.length() < b.factor.length();
    if (a.factor != b.factor) return poly_less(a.factor, b.factor);
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.length() < 2) return false;
  const auto parts = factor(monic(f));
  return parts.size() == 1 && parts[0].multiplicity == 1;
}

Poly expand(const std::vector<FactorPower>& factors, const Field& field) {
  Poly acc = Poly::constant(field, field.one());
  for (const auto& fp : factors) acc = acc * power(fp.factor, fp.multiplicity);
  return acc;
}

}  // namespace selmerlab::algebra
