#include "selmerlab/funcfield/funcfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "selmerlab/algebra/matrix.hpp"
#include "selmerlab/algebra/poly_ring.hpp"
#include "selmerlab/support/errors.hpp"

namespace selmerlab::funcfield {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

Poly poly_at(const Field& F, std::int64_t max_degree, std::uint64_t index) {
  if (max_degree < 0) return Poly(F);
  std::vector<FieldElem> c(static_cast<std::size_t>(max_degree) + 1);
  for (auto& e : c) {
    e = F.element(index % F.order());
    index /= F.order();
  }
  return Poly(F, c);
}

std::uint64_t poly_count(std::uint64_t q, std::int64_t max_degree, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::int64_t i = 0; i <= max_degree; ++i) {
    if (r > cap / q) throw CapExceeded("coefficient search exceeds the cap");
    r *= q;
  }
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (b != 0 && a > cap / b) throw CapExceeded("coefficient search exceeds the cap");
  return a * b;
}

PolyOverT mul(const PolyOverT& a, const PolyOverT& b, const Field& F) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  PolyOverT out{std::vector<Poly>(a.coeffs.size() + b.coeffs.size() - 1, Poly(F))};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return out;
}

PolyOverT sub(PolyOverT a, const PolyOverT& b, const Field& F) {
  if (a.coeffs.size() < b.coeffs.size()) a.coeffs.resize(b.coeffs.size(), Poly(F));
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
  return a;
}

// Exact division by a monic divisor in F_q[t][x]; nullopt when it does not divide.
std::optional<PolyOverT> divide_exact(const PolyOverT& num, const PolyOverT& den, const Field& F) {
  const std::size_t dn = num.coeffs.size() - 1, dd = den.coeffs.size() - 1;
  if (dn < dd) return std::nullopt;
  std::vector<Poly> rem = num.coeffs;
  std::vector<Poly> quo(dn - dd + 1, Poly(F));
  for (std::size_t k = dn + 1; k-- > dd;) {
    const Poly lead = rem[k];
    quo[k - dd] = lead;
    if (lead.is_zero()) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= lead * den.coeffs[j];
  }
  for (std::size_t k = 0; k < dd; ++k)
    if (!rem[k].is_zero()) return std::nullopt;
  return PolyOverT{quo};
}

// x^{deg} + Σ coeffs[i-1] x^{deg-i}
PolyOverT monic_in_x(const Field& F, const std::vector<Poly>& lower) {
  const std::size_t deg = lower.size();
  PolyOverT out{std::vector<Poly>(deg + 1, Poly(F))};
  out.coeffs[deg] = Poly::constant(F, F.one());
  for (std::size_t i = 1; i <= deg; ++i) out.coeffs[deg - i] = lower[i - 1];
  return out;
}

// Σ b[i-1] x^{deg-i}, i = 1..deg+1
PolyOverT lower_in_x(const Field& F, const std::vector<Poly>& b) {
  const std::size_t deg = b.size() - 1;
  PolyOverT out{std::vector<Poly>(deg + 1, Poly(F))};
  for (std::size_t i = 1; i <= deg + 1; ++i) out.coeffs[deg + 1 - i] = b[i - 1];
  return out;
}

}  // namespace

Place Place::finite(Poly prime) {
  require(prime.is_monic() && algebra::is_irreducible(prime), "a finite place needs a monic irreducible");
  Place p;
  p.prime_ = std::move(prime);
  return p;
}

const Poly& Place::prime() const {
  require(prime_.has_value(), "the place at infinity has no prime");
  return *prime_;
}

bool operator==(const Place& a, const Place& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
  return a.prime() == b.prime();
}

bool operator<(const Place& a, const Place& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
  return algebra::poly_less(a.prime(), b.prime());
}

RationalFunction::RationalFunction(Poly p) : num(std::move(p)), den(Poly::constant(num.field(), num.field().one())) {}

RationalFunction::RationalFunction(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  require(!den.is_zero(), "zero denominator");
  const Field& F = den.field();
  if (num.is_zero()) {
    den = Poly::constant(F, F.one());
    return;
  }
  const Poly g = algebra::gcd(num, den);
  num = num / g;
  den = den / g;
  const FieldElem lc = den.leading();
  num = num.scaled(F.inv(lc));
  den = den.scaled(F.inv(lc));
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num * b.num, a.den * b.den);
}

std::optional<std::int64_t> val(const Poly& f, const Place& v) {
  if (f.is_zero()) return std::nullopt;
  if (v.is_infinity()) return -static_cast<std::int64_t>(f.degree().value());
  std::int64_t k = 0;
  Poly g = f;
  while (true) {
    auto [quo, rem] = algebra::divmod(g, v.prime());
    if (!rem.is_zero()) return k;
    g = quo;
    ++k;
  }
}

std::optional<std::int64_t> val(const RationalFunction& f, const Place& v) {
  auto a = val(f.num, v);
  if (!a) return std::nullopt;
  return *a - *val(f.den, v);
}

MinimalModel minimal_model(unsigned n, const std::vector<RationalFunction>& c) {
  require(c.size() == 2 * n + 1, "need 2n+1 coefficients");
  require(std::any_of(c.begin(), c.end(), [](const auto& r) { return !r.is_zero(); }), "all-zero tuple");
  const Field F = c.front().num.field();

  std::vector<Place> places{Place::infinity()};
  for (const auto& r : c) {
    if (r.is_zero()) continue;
    for (const Poly* p : {&r.num, &r.den}) {
      if (p->is_constant()) continue;
      for (const auto& fp : algebra::factor(algebra::monic(*p))) {
        Place pl = Place::finite(fp.factor);
        if (std::find(places.begin(), places.end(), pl) == places.end()) places.push_back(std::move(pl));
      }
    }
  }
  std::sort(places.begin(), places.end());

  MinimalModel m;
  m.n = n;
  RationalFunction scale(Poly::constant(F, F.one()));
  std::vector<RationalFunction> scaled = c;
  for (const auto& v : places) {
    std::optional<std::int64_t> nv;
    for (std::size_t k = 0; k < c.size(); ++k) {
      auto vk = val(c[k], v);
      if (!vk) continue;
      const std::int64_t i = static_cast<std::int64_t>(k) + 2;
      const std::int64_t need = ceil_div(-*vk, i);
      nv = nv ? std::max(*nv, need) : need;
    }
    m.height += *nv * static_cast<std::int64_t>(v.degree());
    if (*nv != 0) m.exponents.push_back({v, *nv});
    if (v.is_infinity() || *nv == 0) continue;
    const Poly& pr = v.prime();
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::int64_t e = *nv * (static_cast<std::int64_t>(k) + 2);
      const Poly pw = algebra::power(pr, static_cast<std::uint64_t>(e >= 0 ? e : -e));
      scaled[k] = e >= 0 ? scaled[k] * RationalFunction(pw) : scaled[k] * RationalFunction(Poly::constant(F, F.one()), pw);
    }
  }
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    ensure(scaled[k].den.is_one(), "normalized section is not integral");
    const auto i = static_cast<std::int64_t>(k) + 2;
    ensure(scaled[k].num.is_zero() || static_cast<std::int64_t>(scaled[k].num.degree().value()) <= i * m.height,
           "normalized section exceeds its degree bound");
    m.sections.push_back(scaled[k].num);
  }
  return m;
}

MinimalModel minimal_model(unsigned n, const std::vector<Poly>& c) {
  std::vector<RationalFunction> r;
  for (const auto& p : c) r.emplace_back(p);
  return minimal_model(n, r);
}

MinimalModel model_from_sections(unsigned n, std::int64_t d, std::vector<Poly> sections) {
  require(sections.size() == 2 * n + 1, "need 2n+1 sections");
  require(d >= 0, "height must be non-negative");
  for (std::size_t k = 0; k < sections.size(); ++k) {
    const auto i = static_cast<std::int64_t>(k) + 2;
    require(sections[k].is_zero() || static_cast<std::int64_t>(sections[k].degree().value()) <= i * d,
            "section exceeds its degree bound");
  }
  MinimalModel m;
  m.n = n;
  m.height = d;
  if (d != 0) m.exponents.push_back({Place::infinity(), d});
  m.sections = std::move(sections);
  return m;
}

bool is_minimal(const MinimalModel& m) {
  // At ∞ in the O(d) trivialization: order of c_i is i·d − deg c_i.
  bool witness_inf = false;
  Poly common(m.sections.front().field());
  for (std::size_t k = 0; k < m.sections.size(); ++k) {
    const Poly& s = m.sections[k];
    if (s.is_zero()) continue;
    const auto i = static_cast<std::int64_t>(k) + 2;
    if (i * m.height - static_cast<std::int64_t>(s.degree().value()) < i) witness_inf = true;
    common = algebra::gcd(common, s);
  }
  if (!witness_inf) return false;
  if (common.is_constant()) return true;
  for (const auto& fp : algebra::factor(algebra::monic(common))) {
    const Place v = Place::finite(fp.factor);
    bool witness = false;
    for (std::size_t k = 0; k < m.sections.size() && !witness; ++k) {
      auto vk = val(m.sections[k], v);
      if (vk && *vk < static_cast<std::int64_t>(k) + 2) witness = true;
    }
    if (!witness) return false;
  }
  return true;
}

Poly discriminant_in_t(const Field& F, unsigned n, const std::vector<Poly>& sections) {
  require(sections.size() == 2 * n + 1, "need 2n+1 sections");
  const std::size_t N = 2 * n + 2;
  const algebra::PolyRing R(F);
  std::vector<Poly> coeffs(N + 1, Poly(F));
  coeffs[N] = R.one();
  for (std::size_t i = 2; i <= N; ++i) coeffs[N - i] = sections[i - 2];
  return algebra::discriminant_of_monic(R, coeffs);
}

std::uint64_t discriminant_degree_bound(unsigned n, std::int64_t d) {
  return static_cast<std::uint64_t>((2 * n + 1) * (2 * n + 2)) * static_cast<std::uint64_t>(d);
}

TransversalityReport transversality(const MinimalModel& m) {
  const Field& F = m.sections.front().field();
  const Poly delta = discriminant_in_t(F, m.n, m.sections);
  if (delta.is_zero()) throw DomainError("degenerate curve: discriminant vanishes identically");
  const std::uint64_t bound = discriminant_degree_bound(m.n, m.height);
  const std::uint64_t deg = delta.degree().value();
  ensure(deg <= bound, "discriminant exceeds its degree bound");
  TransversalityReport r;
  r.finite_squarefree = algebra::is_squarefree(delta);
  r.order_at_infinity = bound - deg;
  r.transversal = r.finite_squarefree && r.order_at_infinity <= 1;
  return r;
}

bool is_transversal(const MinimalModel& m) { return transversality(m).transversal; }

std::uint64_t aut_order(const MinimalModel& m) {
  const Field& F = m.sections.front().field();
  std::uint64_t g = 0;
  for (std::size_t k = 0; k < m.sections.size(); ++k)
    if (!m.sections[k].is_zero()) g = std::gcd(g, static_cast<std::uint64_t>(k + 2));
  const std::uint64_t units = F.order() - 1;
  return g == 0 ? units : std::gcd(g, units);
}

Rational curve_count(std::int64_t d, std::int64_t g, unsigned n, std::uint64_t q) {
  const auto nn = static_cast<std::int64_t>(n);
  return rational_pow(q, (2 * (nn + 1) * (nn + 1) + nn) * d + (2 * nn + 1) * (1 - g));
}

PolyOverT model_polynomial(const MinimalModel& m) {
  const Field& F = m.sections.front().field();
  return monic_in_x(F, [&] {
    std::vector<Poly> lower{Poly(F)};
    for (const auto& s : m.sections) lower.push_back(s);
    return lower;
  }());
}

std::vector<Poly> torsion_radicands(const Field& F) {
  return {Poly::constant(F, F.nonsquare()), Poly::x(F)};
}

namespace {

// Calls visit(coeffs) for every tuple with deg coeffs[i] ≤ bounds[i].
template <class Visit>
void for_each_tuple(const Field& F, const std::vector<std::int64_t>& bounds, std::uint64_t cap, Visit&& visit) {
  std::uint64_t total = 1;
  std::vector<std::uint64_t> sizes;
  for (auto b : bounds) {
    sizes.push_back(poly_count(F.order(), b, cap));
    total = checked_mul(total, sizes.back(), cap);
  }
  std::vector<Poly> tuple(bounds.size(), Poly(F));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      tuple[k] = poly_at(F, bounds[k], r % sizes[k]);
      r /= sizes[k];
    }
    visit(tuple);
  }
}

std::int64_t half_floor(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

// (x^{n+1} + A)² − D·B²
PolyOverT conjugate_product(const Field& F, const std::vector<Poly>& a, const std::vector<Poly>& b,
                            const Poly& radicand) {
  std::vector<Poly> lower{Poly(F)};
  lower.insert(lower.end(), a.begin(), a.end());
  const PolyOverT h = monic_in_x(F, lower);
  PolyOverT bx = lower_in_x(F, b);
  for (auto& e : bx.coeffs) e = e * radicand;
  return sub(mul(h, h, F), mul(bx, lower_in_x(F, b), F), F);
}

std::vector<std::int64_t> conjugate_b_bounds(unsigned n, std::int64_t d, const Poly& radicand) {
  std::vector<std::int64_t> out;
  const auto dd = static_cast<std::int64_t>(radicand.degree().value());
  for (unsigned i = 1; i <= n + 1; ++i) out.push_back(half_floor(2 * static_cast<std::int64_t>(i) * d - dd));
  return out;
}

}  // namespace

std::optional<TorsionWitness> rational_2torsion_scan(const MinimalModel& m, std::uint64_t cap) {
  const Field& F = m.sections.front().field();
  const unsigned n = m.n;
  const std::size_t N = 2 * n + 2;
  const std::int64_t d = m.height;
  const PolyOverT f = model_polynomial(m);

  std::optional<TorsionWitness> found;
  // Even factorizations g·h; enumerate the factor of smaller degree 2k ≤ n+1.
  for (std::size_t deg = 2; 2 * deg <= N && !found; deg += 2) {
    std::vector<std::int64_t> bounds;
    for (std::size_t i = 1; i <= deg; ++i) bounds.push_back(static_cast<std::int64_t>(i) * d);
    for_each_tuple(F, bounds, cap, [&](const std::vector<Poly>& a) {
      if (found) return;
      const PolyOverT g = monic_in_x(F, a);
      if (auto h = divide_exact(f, g, F)) found = TorsionWitness{TorsionWitness::Kind::even_factorization, g, *h, Poly(F)};
    });
  }
  if (found) return found;
  for (const Poly& D : torsion_radicands(F)) {
    std::vector<std::int64_t> bounds;
    for (unsigned i = 2; i <= n + 1; ++i) bounds.push_back(static_cast<std::int64_t>(i) * d);
    const auto bb = conjugate_b_bounds(n, d, D);
    bounds.insert(bounds.end(), bb.begin(), bb.end());
    for_each_tuple(F, bounds, cap, [&](const std::vector<Poly>& t) {
      if (found) return;
      std::vector<Poly> a(t.begin(), t.begin() + n), b(t.begin() + n, t.end());
      if (std::all_of(b.begin(), b.end(), [](const Poly& p) { return p.is_zero(); })) return;
      PolyOverT prod = conjugate_product(F, a, b, D);
      prod.coeffs.resize(N + 1, Poly(F));
      if (prod == f) {
        std::vector<Poly> lower{Poly(F)};
        lower.insert(lower.end(), a.begin(), a.end());
        found = TorsionWitness{TorsionWitness::Kind::conjugate_pair, monic_in_x(F, lower), lower_in_x(F, b), D};
      }
    });
    if (found) break;
  }
  return found;
}

Rational rational_2torsion_bound(unsigned n, std::uint64_t q, std::int64_t d, std::int64_t g) {
  const auto nn = static_cast<std::int64_t>(n);
  Rational total = 0;
  for (std::int64_t i = 1; i <= nn; ++i)
    total += rational_pow(q, (4 * i * i - 4 * i * (nn + 1) + (nn + 2) * (2 * nn + 1)) * d + (2 * nn + 1) * (1 - g));
  total += Rational(big_pow(2, n + 1)) * rational_pow(q, (3 * nn * nn + 9 * nn + 4) / 2);
  return total;
}

TorsionCensus rational_2torsion_census(const Field& F, unsigned n, std::int64_t d, std::uint64_t cap) {
  require(d >= 0, "height must be non-negative");
  const std::size_t N = 2 * n + 2;
  // Tuple index inside the d-box, c_2 least significant.
  std::vector<std::uint64_t> sizes;
  std::uint64_t box = 1;  // only checked against the cap
  for (std::size_t i = 2; i <= N; ++i) {
    sizes.push_back(poly_count(F.order(), static_cast<std::int64_t>(i) * d, cap));
    box = checked_mul(box, sizes.back(), cap);
  }
  auto tuple_index = [&](const PolyOverT& f) -> std::optional<std::uint64_t> {
    std::uint64_t idx = 0;
    for (std::size_t i = N; i >= 2; --i) {
      const Poly& c = N - i < f.coeffs.size() ? f.coeffs[N - i] : Poly(F);
      if (!c.is_zero() && static_cast<std::int64_t>(c.degree().value()) > static_cast<std::int64_t>(i) * d)
        return std::nullopt;
      std::uint64_t code = 0;
      for (std::size_t k = c.length(); k-- > 0;) code = code * F.order() + c.coeff(k).v;
      idx = idx * sizes[i - 2] + code;
    }
    return idx;
  };

  std::unordered_set<std::uint64_t> even, conj;
  for (std::size_t deg = 2; 2 * deg <= N; deg += 2) {
    std::vector<std::int64_t> bounds;
    for (std::size_t i = 1; i <= deg; ++i) bounds.push_back(static_cast<std::int64_t>(i) * d);
    for (std::size_t j = 2; j <= N - deg; ++j) bounds.push_back(static_cast<std::int64_t>(j) * d);
    for_each_tuple(F, bounds, cap, [&](const std::vector<Poly>& t) {
      // h's x-coefficient is forced to −a_1 so that f has no x^{2n+1} term.
      std::vector<Poly> a(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(deg));
      std::vector<Poly> b{-a.front()};
      b.insert(b.end(), t.begin() + static_cast<std::ptrdiff_t>(deg), t.end());
      const PolyOverT f = mul(monic_in_x(F, a), monic_in_x(F, b), F);
      if (auto idx = tuple_index(f)) even.insert(*idx);
    });
  }
  for (const Poly& D : torsion_radicands(F)) {
    std::vector<std::int64_t> bounds;
    for (unsigned i = 2; i <= n + 1; ++i) bounds.push_back(static_cast<std::int64_t>(i) * d);
    const auto bb = conjugate_b_bounds(n, d, D);
    bounds.insert(bounds.end(), bb.begin(), bb.end());
    for_each_tuple(F, bounds, cap, [&](const std::vector<Poly>& t) {
      std::vector<Poly> a(t.begin(), t.begin() + n), b(t.begin() + n, t.end());
      if (std::all_of(b.begin(), b.end(), [](const Poly& p) { return p.is_zero(); })) return;
      const PolyOverT f = conjugate_product(F, a, b, D);
      if (auto idx = tuple_index(f)) conj.insert(*idx);
    });
  }

  auto nondegenerate = [&](std::uint64_t idx) {
    std::vector<Poly> sections;
    for (std::size_t i = 2; i <= N; ++i) {
      sections.push_back(poly_at(F, static_cast<std::int64_t>(i) * d, idx % sizes[i - 2]));
      idx /= sizes[i - 2];
    }
    return !discriminant_in_t(F, n, sections).is_zero();
  };
  TorsionCensus out;
  std::unordered_set<std::uint64_t> all;
  for (auto idx : even)
    if (nondegenerate(idx)) {
      ++out.even_factorization;
      all.insert(idx);
    }
  for (auto idx : conj)
    if (nondegenerate(idx)) {
      ++out.conjugate_pair;
      all.insert(idx);
    }
  out.total = all.size();
  out.bound = rational_2torsion_bound(n, F.order(), d);
  return out;
}

}  // namespace selmerlab::funcfield
