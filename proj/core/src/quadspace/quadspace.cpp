#include "selmerlab/quadspace/quadspace.hpp"

#include <algorithm>

#include "selmerlab/support/errors.hpp"

namespace selmerlab::quadspace {

MatN gram(const Field& F, std::size_t N) {
  MatN G(N, N, F.zero());
  for (std::size_t i = 0; i < N; ++i) G(i, N - 1 - i) = F.one();
  return G;
}

MatN adjoint(const MatN& T) {
  require(T.is_square(), "adjoint of a non-square matrix");
  const std::size_t N = T.rows();
  MatN out = T;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = T(N - 1 - j, N - 1 - i);
  return out;
}

bool is_in_V(const Field& F, const MatN& T) {
  if (!T.is_square()) return false;
  return adjoint(T) == T && algebra::trace(F, T).v == 0;
}

std::optional<FieldElem> multiplier(const Field& F, const MatN& g) {
  require(g.is_square(), "multiplier of a non-square matrix");
  const MatN prod = algebra::mat_mul(F, g, adjoint(g));
  const std::size_t N = g.rows();
  const FieldElem mu = prod(0, 0);
  if (mu.v == 0) return std::nullopt;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (prod(i, j) != (i == j ? mu : F.zero())) return std::nullopt;
  return mu;
}

MatN tau(const Field& F, std::size_t N, FieldElem a) {
  MatN t = algebra::identity_matrix(F, N);
  for (std::size_t i = 0; i < N / 2; ++i) t(i, i) = a;
  return t;
}

FieldElem pairing(const Field& F, const std::vector<FieldElem>& u, const std::vector<FieldElem>& v) {
  const std::size_t N = u.size();
  FieldElem acc = F.zero();
  for (std::size_t k = 0; k < N; ++k) acc = F.add(acc, F.mul(u[k], v[N - 1 - k]));
  return acc;
}

GroupOrder group_order(unsigned m, std::uint64_t q) {
  require(m >= 1, "half-dimension must be positive");
  auto pp = algebra::prime_power(q);
  require(pp.has_value() && pp->first != 2, "q must be an odd prime power");
  BigInt order = big_pow(q, std::uint64_t{m} * (m - 1)) * (big_pow(q, m) - 1);
  for (unsigned i = 1; i < m; ++i) order *= big_pow(q, 2 * i) - 1;
  return {order, order, m * (2 * m - 1)};
}

Rational group_volume(unsigned m, std::uint64_t q) {
  const auto go = group_order(m, q);
  return Rational(go.g_order, big_pow(q, go.dim_g));
}

namespace {

bool entry_less(const MatN& a, const MatN& b) {
  return std::lexicographical_compare(a.data().begin(), a.data().end(), b.data().begin(), b.data().end());
}

MatN normalize_sign(const Field& F, MatN s) {
  for (const auto& e : s.data()) {
    if (e.v == 0) continue;
    if (F.neg(e).v < e.v) {
      for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = F.neg(s(i, j));
    }
    break;
  }
  return s;
}

}  // namespace

bool operator<(const GClass& a, const GClass& b) {
  if (a.nonsquare_multiplier != b.nonsquare_multiplier) return !a.nonsquare_multiplier;
  return entry_less(a.rotation, b.rotation);
}

MatN similitude(const Field& F, const GClass& g) {
  if (!g.nonsquare_multiplier) return g.rotation;
  return algebra::mat_mul(F, tau(F, g.rotation.rows(), F.nonsquare()), g.rotation);
}

GClass gclass_of(const Field& F, const MatN& g) {
  const auto mu = multiplier(F, g);
  require(mu.has_value(), "not a similitude");
  const std::size_t N = g.rows();
  GClass out;
  out.nonsquare_multiplier = !F.is_square(*mu);
  MatN s = g;
  FieldElem rest = *mu;
  if (out.nonsquare_multiplier) {
    const FieldElem nu = F.nonsquare();
    s = algebra::mat_mul(F, tau(F, N, F.inv(nu)), g);
    rest = F.div(*mu, nu);
  }
  const FieldElem lambda_inv = F.inv(*F.sqrt(rest));
  s = algebra::mat_scale(F, std::move(s), lambda_inv);
  require(algebra::det(F, s) == F.one(), "similitude is not in GSO");
  out.rotation = normalize_sign(F, std::move(s));
  return out;
}

MatN act(const Field& F, const MatN& g, const MatN& T) {
  const auto mu = multiplier(F, g);
  MatN ginv;
  if (mu) {
    ginv = algebra::mat_scale(F, adjoint(g), F.inv(*mu));
  } else {
    auto inv = algebra::inverse(F, g);
    require(inv.has_value(), "acting by a singular matrix");
    ginv = *inv;
  }
  return algebra::mat_mul(F, algebra::mat_mul(F, g, T), ginv);
}

void for_each_special_orthogonal(const Field& F, unsigned n, std::uint64_t cap,
                                 const std::function<void(const MatN&)>& visit) {
  const std::size_t N = 2 * static_cast<std::size_t>(n) + 2;
  const auto expected = group_order(n + 1, F.order()).so_order;
  if (expected > cap) throw CapExceeded("SO(F_q) enumeration exceeds the cap");

  std::vector<std::vector<FieldElem>> cols(N);
  std::vector<FieldElem> x(N);

  std::function<void(std::size_t)> extend = [&](std::size_t j) {
    if (j == N) {
      MatN g(N, N, F.zero());
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t r = 0; r < N; ++r) g(r, c) = cols[c][r];
      if (algebra::det(F, g) == F.one()) visit(g);
      return;
    }
    // B(col_i, x) = δ_{i+j, N−1} for earlier columns i.
    MatN A(j, N, F.zero());
    std::vector<FieldElem> b(j, F.zero());
    for (std::size_t i = 0; i < j; ++i) {
      for (std::size_t k = 0; k < N; ++k) A(i, k) = cols[i][N - 1 - k];
      if (i + j == N - 1) b[i] = F.one();
    }
    const auto sol = algebra::solve_affine(F, A, b);
    if (!sol) return;
    const std::size_t free = sol->kernel.size();
    std::vector<std::uint32_t> digits(free, 0);
    const std::uint32_t q = F.order();
    while (true) {
      x = sol->particular;
      for (std::size_t l = 0; l < free; ++l) {
        if (digits[l] == 0) continue;
        const FieldElem t{digits[l]};
        for (std::size_t k = 0; k < N; ++k) x[k] = F.add(x[k], F.mul(t, sol->kernel[l][k]));
      }
      bool nonzero = std::any_of(x.begin(), x.end(), [](FieldElem e) { return e.v != 0; });
      if (nonzero && pairing(F, x, x).v == 0) {
        cols[j] = x;
        extend(j + 1);
      }
      std::size_t l = 0;
      while (l < free && ++digits[l] == q) digits[l++] = 0;
      if (l == free) break;
    }
  };
  extend(0);
}

std::vector<MatN> enumerate_special_orthogonal(const Field& F, unsigned n, std::uint64_t cap) {
  std::vector<MatN> out;
  for_each_special_orthogonal(F, n, cap, [&](const MatN& g) { out.push_back(g); });
  return out;
}

std::vector<GClass> enumerate_G(const Field& F, unsigned n, std::uint64_t cap) {
  const auto expected = group_order(n + 1, F.order()).g_order;
  if (expected > cap) throw CapExceeded("G(F_q) enumeration exceeds the cap");
  std::vector<GClass> out;
  out.reserve(static_cast<std::size_t>(expected));
  for_each_special_orthogonal(F, n, cap, [&](const MatN& s) {
    // ±s give the same class; keep the sign-normalized one only.
    if (normalize_sign(F, s) != s) return;
    out.push_back(GClass{false, s});
    out.push_back(GClass{true, s});
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace selmerlab::quadspace
