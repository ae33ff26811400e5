#include "selmerlab/algebra/field.hpp"

#include <algorithm>
#include <numeric>

#include "selmerlab/support/errors.hpp"

namespace selmerlab::algebra {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t r = 1;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  // Tables, present when q <= kTableLimit.
  std::vector<std::uint32_t> exp_table;  // size 2(q-1)
  std::vector<std::uint32_t> log_table;  // size q
  std::vector<std::uint32_t> add_table;  // q*q, extension fields with q <= kAddTableLimit
  std::vector<std::uint32_t> neg_table;  // extension fields only
  std::uint32_t generator = 0;
  std::uint32_t nonsquare = 0;
  std::uint32_t half = 0;
  bool tables = false;
};

}  // namespace detail

namespace {

constexpr std::uint32_t kTableLimit = 1u << 20;
constexpr std::uint32_t kAddTableLimit = 2048;

using Digits = std::vector<std::uint32_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return (a * b) % m; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense F_p[x] helpers used only while constructing a field.
void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Digits pmul(const Digits& a, const Digits& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Digits out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  trim(out);
  return out;
}

Digits pmod(Digits a, const Digits& m, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = static_cast<std::uint32_t>(powmod(m.back(), p - 2, p));
  while (a.size() >= m.size()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - mulmod(c, m[i], p)) % p);
    trim(a);
  }
  return a;
}

Digits pgcd(Digits a, Digits b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Digits ppowmod(Digits base, std::uint64_t e, const Digits& m, std::uint32_t p) {
  Digits r{1};
  base = pmod(base, m, p);
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// x^(p^k) mod m, by k successive p-th powers.
Digits frobenius_power_of_x(std::uint32_t k, const Digits& m, std::uint32_t p) {
  Digits h{0, 1};
  for (std::uint32_t i = 0; i < k; ++i) h = ppowmod(h, p, m, p);
  return h;
}

Digits sub_x(Digits a, std::uint32_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

bool rabin_irreducible(const Digits& f, std::uint32_t p) {
  const auto r = static_cast<std::uint32_t>(f.size() - 1);
  if (sub_x(frobenius_power_of_x(r, f, p), p).size() != 0) return false;
  for (auto l : prime_factors(r)) {
    Digits g = pgcd(f, sub_x(frobenius_power_of_x(static_cast<std::uint32_t>(r / l), f, p), p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Digits smallest_irreducible(std::uint32_t p, std::uint32_t r) {
  // Lexicographic over (c_0, c_1, ..., c_{r-1}) with c_0 most significant.
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < r; ++i) total *= p;
  for (std::uint64_t k = 0; k < total; ++k) {
    Digits f(r + 1, 0);
    std::uint64_t t = k;
    for (std::uint32_t i = 0; i < r; ++i) {
      f[r - 1 - i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[r] = 1;
    if (f[0] == 0) continue;
    if (rabin_irreducible(f, p)) return f;
  }
  throw InvariantViolation("no irreducible polynomial found");
}

Digits to_digits(std::uint32_t index, const detail::FieldData& d) {
  Digits out(d.r, 0);
  for (std::uint32_t i = 0; i < d.r; ++i) {
    out[i] = index % d.p;
    index /= d.p;
  }
  return out;
}

std::uint32_t from_digits(const Digits& digits, const detail::FieldData& d) {
  std::uint64_t index = 0;
  for (std::size_t i = digits.size(); i-- > 0;) index = index * d.p + digits[i];
  return static_cast<std::uint32_t>(index);
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, const detail::FieldData& d) {
  if (d.r == 1) return static_cast<std::uint32_t>(mulmod(a, b, d.p));
  Digits prod = pmod(pmul(to_digits(a, d), to_digits(b, d), d.p), d.modulus, d.p);
  prod.resize(d.r, 0);
  return from_digits(prod, d);
}

std::uint32_t slow_add(std::uint32_t a, std::uint32_t b, const detail::FieldData& d) {
  if (d.r == 1) return (a + b) % d.p;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t i = 0; i < d.r; ++i) {
    out += ((a % d.p + b % d.p) % d.p) * scale;
    a /= d.p;
    b /= d.p;
    scale *= d.p;
  }
  return out;
}

std::uint32_t slow_neg(std::uint32_t a, const detail::FieldData& d) {
  if (d.r == 1) return a == 0 ? 0 : d.p - a;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t i = 0; i < d.r; ++i) {
    out += ((d.p - a % d.p) % d.p) * scale;
    a /= d.p;
    scale *= d.p;
  }
  return out;
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e, const detail::FieldData& d) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = slow_mul(r, a, d);
    a = slow_mul(a, a, d);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  std::uint32_t r = 0;
  while (q % p == 0) {
    q /= p;
    ++r;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), r);
}

Field Field::make(std::uint32_t p, std::uint32_t r) {
  require(is_prime(p), "field characteristic must be prime");
  require(p != 2, "characteristic 2 is not supported");
  require(r >= 1, "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    require(q <= (r == 1 ? (std::uint64_t{1} << 31) : kTableLimit), "field too large");
  }
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->r = r;
  d->q = static_cast<std::uint32_t>(q);
  d->modulus = r == 1 ? Digits{0, 1} : smallest_irreducible(p, r);

  const std::uint32_t qm1 = d->q - 1;
  const auto factors = prime_factors(qm1);
  std::uint32_t g = 1;
  for (std::uint32_t cand = 1; cand < d->q; ++cand) {
    bool primitive = true;
    for (auto l : factors) {
      if (slow_pow(cand, qm1 / l, *d) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  d->generator = g;

  if (d->q <= kTableLimit) {
    d->tables = true;
    d->exp_table.assign(2 * static_cast<std::size_t>(qm1), 0);
    d->log_table.assign(d->q, 0);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < qm1; ++k) {
      d->exp_table[k] = x;
      d->exp_table[k + qm1] = x;
      d->log_table[x] = k;
      x = slow_mul(x, g, *d);
    }
    if (r > 1) {
      d->neg_table.resize(d->q);
      for (std::uint32_t a = 0; a < d->q; ++a) d->neg_table[a] = slow_neg(a, *d);
      if (d->q <= kAddTableLimit) {
        d->add_table.resize(static_cast<std::size_t>(d->q) * d->q);
        for (std::uint32_t a = 0; a < d->q; ++a)
          for (std::uint32_t b = 0; b < d->q; ++b) d->add_table[std::size_t{a} * d->q + b] = slow_add(a, b, *d);
      }
    }
  }
  Field f(std::move(d));
  // Smallest-index non-square and 1/2.
  for (std::uint32_t a = 1; a < f.order(); ++a) {
    if (!f.is_square(FieldElem{a})) {
      auto* m = const_cast<detail::FieldData*>(f.data_.get());
      m->nonsquare = a;
      break;
    }
  }
  const_cast<detail::FieldData*>(f.data_.get())->half = f.inv(FieldElem{2 % p}).v;
  return f;
}

Field Field::of_order(std::uint64_t q) {
  auto pr = prime_power(q);
  require(pr.has_value(), "field size must be a prime power");
  return make(pr->first, pr->second);
}

std::uint32_t Field::characteristic() const { return data_->p; }
std::uint32_t Field::degree() const { return data_->r; }
std::uint32_t Field::order() const { return data_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return data_->modulus; }

FieldElem Field::element(std::uint64_t index) const {
  require(index < data_->q, "element index out of range");
  return {static_cast<std::uint32_t>(index)};
}

FieldElem Field::from_int(std::int64_t value) const {
  const std::int64_t p = data_->p;
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return {static_cast<std::uint32_t>(r)};
}

std::vector<FieldElem> Field::elements() const {
  std::vector<FieldElem> out(data_->q);
  for (std::uint32_t i = 0; i < data_->q; ++i) out[i] = {i};
  return out;
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
  const auto& d = *data_;
  if (d.r == 1) {
    std::uint32_t s = a.v + b.v;
    return {s >= d.p ? s - d.p : s};
  }
  if (!d.add_table.empty()) return {d.add_table[std::size_t{a.v} * d.q + b.v]};
  return {slow_add(a.v, b.v, d)};
}

FieldElem Field::neg(FieldElem a) const {
  const auto& d = *data_;
  if (d.r == 1) return {a.v == 0 ? 0 : d.p - a.v};
  return {d.neg_table[a.v]};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const {
  const auto& d = *data_;
  if (d.r == 1) return {a.v >= b.v ? a.v - b.v : a.v + d.p - b.v};
  return add(a, neg(b));
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
  const auto& d = *data_;
  if (d.r == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.v} * b.v) % d.p)};
  if (a.v == 0 || b.v == 0) return {0};
  return {d.exp_table[d.log_table[a.v] + d.log_table[b.v]]};
}

FieldElem Field::inv(FieldElem a) const {
  const auto& d = *data_;
  require(a.v != 0, "division by zero in finite field");
  if (d.tables) return {d.exp_table[(d.q - 1 - d.log_table[a.v]) % (d.q - 1)]};
  return {static_cast<std::uint32_t>(powmod(a.v, d.p - 2, d.p))};
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
  const auto& d = *data_;
  if (e == 0) return one();
  if (a.v == 0) return zero();
  if (d.tables) {
    const std::uint64_t k = (std::uint64_t{d.log_table[a.v]} * (e % (d.q - 1))) % (d.q - 1);
    return {d.exp_table[k]};
  }
  return {static_cast<std::uint32_t>(powmod(a.v, e, d.p))};
}

FieldElem Field::half() const { return {data_->half}; }

bool Field::is_square(FieldElem a) const {
  const auto& d = *data_;
  if (a.v == 0) return true;
  if (d.tables) return d.log_table[a.v] % 2 == 0;
  return powmod(a.v, (d.p - 1) / 2, d.p) == 1;
}

std::optional<FieldElem> Field::sqrt(FieldElem a) const {
  const auto& d = *data_;
  if (a.v == 0) return zero();
  if (!is_square(a)) return std::nullopt;
  if (d.tables) {
    FieldElem s{d.exp_table[d.log_table[a.v] / 2]};
    FieldElem t = neg(s);
    return t.v < s.v ? t : s;
  }
  // Tonelli-Shanks for large prime fields.
  const std::uint64_t p = d.p;
  std::uint64_t qq = p - 1;
  std::uint32_t s = 0;
  while (qq % 2 == 0) {
    qq /= 2;
    ++s;
  }
  std::uint64_t z = d.nonsquare;
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, qq, p);
  std::uint64_t t = powmod(a.v, qq, p);
  std::uint64_t r = powmod(a.v, (qq + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  FieldElem root{static_cast<std::uint32_t>(r)};
  FieldElem other = neg(root);
  return other.v < root.v ? other : root;
}

FieldElem Field::nonsquare() const { return {data_->nonsquare}; }

FieldElem Field::frobenius(FieldElem a) const { return pow(a, data_->p); }

FieldElem Field::primitive_element() const { return {data_->generator}; }

std::uint32_t Field::log(FieldElem a) const {
  require(a.v != 0, "log of zero");
  require(data_->tables, "discrete log tables unavailable for this field size");
  return data_->log_table[a.v];
}

std::int64_t Field::centered_prime_value(FieldElem a) const {
  require(a.v < data_->p, "element is not in the prime field");
  const std::int64_t p = data_->p;
  const std::int64_t v = a.v;
  return v > p / 2 ? v - p : v;
}

std::string Field::to_string(FieldElem a) const {
  if (data_->r == 1) return std::to_string(a.v);
  auto digits = to_digits(a.v, *data_);
  std::string out = "[";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(digits[i]);
  }
  return out + "]";
}

bool Field::same_as(const Field& other) const {
  return data_->p == other.data_->p && data_->r == other.data_->r && data_->modulus == other.data_->modulus;
}

}  // namespace selmerlab::algebra
