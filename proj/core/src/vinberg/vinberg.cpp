#include "selmerlab/vinberg/vinberg.hpp"

#include <algorithm>
#include <numeric>

#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/algebra/matrix.hpp"
#include "selmerlab/support/errors.hpp"
#include "selmerlab/support/parallel.hpp"

namespace selmerlab::vinberg {

namespace {

std::size_t matrix_dim(unsigned n) { return 2 * static_cast<std::size_t>(n) + 2; }

std::uint64_t checked_pow(std::uint64_t base, unsigned e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > cap / base) throw CapExceeded("enumeration exceeds the cap");
    r *= base;
  }
  return r;
}

}  // namespace

Poly characteristic_poly(const Field& F, const Invariant& c) {
  const std::size_t N = matrix_dim(c.n);
  require(c.coeffs.size() == N - 1, "invariant has the wrong length");
  std::vector<FieldElem> co(N + 1, F.zero());
  co[N] = F.one();
  for (unsigned i = 2; i <= N; ++i) co[N - i] = c.c(i);
  return Poly(F, co);
}

Invariant invariant_from_poly(const Poly& f) {
  require(f.is_monic(), "invariant_from_poly needs a monic polynomial");
  const std::size_t N = f.degree().value();
  require(N >= 4 && N % 2 == 0, "degree must be 2n+2 with n >= 1");
  require(f.coeff(N - 1).v == 0, "x^{2n+1} coefficient must vanish");
  Invariant c{static_cast<unsigned>(N / 2 - 1), {}};
  for (std::size_t i = 2; i <= N; ++i) c.coeffs.push_back(f.coeff(N - i));
  return c;
}

std::uint64_t invariant_index(const Field& F, const Invariant& c) {
  std::uint64_t idx = 0;
  for (std::size_t k = c.coeffs.size(); k-- > 0;) idx = idx * F.order() + c.coeffs[k].v;
  return idx;
}

Invariant invariant_at(const Field& F, unsigned n, std::uint64_t index) {
  Invariant c{n, std::vector<FieldElem>(2 * n + 1)};
  for (auto& e : c.coeffs) {
    e = F.element(index % F.order());
    index /= F.order();
  }
  require(index == 0, "invariant index out of range");
  return c;
}

unsigned dim_V(unsigned n) { return (n + 1) * (2 * n + 3) - 1; }

MatN v_element(const Field& F, unsigned n, const std::vector<FieldElem>& coords) {
  require(coords.size() == dim_V(n), "wrong number of V coordinates");
  const std::size_t N = matrix_dim(n);
  MatN T(N, N, F.zero());
  std::size_t k = 0;
  FieldElem diag_sum = F.zero();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; i + j < N; ++j) {
      if (i == n && j == n) continue;
      T(i, j) = coords[k++];
      T(N - 1 - j, N - 1 - i) = T(i, j);
      if (i == j) diag_sum = F.add(diag_sum, T(i, i));
    }
  T(n, n) = F.neg(diag_sum);
  T(n + 1, n + 1) = T(n, n);
  return T;
}

MatN v_element_at(const Field& F, unsigned n, std::uint64_t index) {
  std::vector<FieldElem> coords(dim_V(n));
  for (auto& e : coords) {
    e = F.element(index % F.order());
    index /= F.order();
  }
  require(index == 0, "V index out of range");
  return v_element(F, n, coords);
}

Invariant invariants_of(const Field& F, const MatN& T) {
  require(quadspace::is_in_V(F, T), "invariants_of needs an element of V");
  const std::size_t N = T.rows();
  const auto cp = algebra::charpoly(F, T);
  Invariant c{static_cast<unsigned>(N / 2 - 1), {}};
  for (std::size_t i = 2; i <= N; ++i) c.coeffs.push_back(cp[N - i]);
  return c;
}

MatN kostant1(const Field& F, const Invariant& c) {
  const unsigned n = c.n;
  const std::size_t N = matrix_dim(n);
  const std::size_t m = n + 1;
  require(c.coeffs.size() == N - 1, "invariant has the wrong length");
  MatN K(N, N, F.zero());
  for (std::size_t i = 0; i + 1 < N; ++i) K(i + 1, i) = F.one();
  const FieldElem half = F.half();
  // 1-based (i, j) inside the upper-right (n+1)×(n+1) block.
  auto C = [&](std::size_t i, std::size_t j) -> FieldElem& { return K(i - 1, m + j - 1); };
  for (std::size_t i = 1; i <= m; ++i) {
    C(i, m + 1 - i) = F.neg(c.c(static_cast<unsigned>(2 * n + 4 - 2 * i)));
    if (i >= 2) C(i, m + 2 - i) = F.neg(F.mul(half, c.c(static_cast<unsigned>(2 * n + 5 - 2 * i))));
    if (i <= n) C(i, m - i) = F.neg(F.mul(half, c.c(static_cast<unsigned>(2 * n + 3 - 2 * i))));
  }
  return K;
}

MatN corner_swap(const Field& F, std::size_t N) {
  MatN J = algebra::identity_matrix(F, N);
  J(0, 0) = F.zero();
  J(N - 1, N - 1) = F.zero();
  J(0, N - 1) = F.one();
  J(N - 1, 0) = F.one();
  return J;
}

MatN kostant2(const Field& F, const Invariant& c) {
  const MatN J = corner_swap(F, matrix_dim(c.n));
  return algebra::mat_mul(F, algebra::mat_mul(F, J, kostant1(F, c)), quadspace::adjoint(J));
}

bool is_regular(const Field& F, const MatN& T) {
  require(quadspace::is_in_V(F, T), "is_regular needs an element of V");
  const std::size_t N = T.rows();
  MatN krylov(N, N * N, F.zero());
  MatN pw = algebra::identity_matrix(F, N);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t e = 0; e < N * N; ++e) krylov(k, e) = pw.data()[e];
    if (k + 1 < N) pw = algebra::mat_mul(F, pw, T);
  }
  return algebra::rank(F, std::move(krylov)) == N;
}

unsigned FactorPattern::total_degree() const {
  unsigned s = 0;
  for (auto [d, m] : parts) s += d * m;
  return s;
}

bool FactorPattern::squarefree() const {
  return std::all_of(parts.begin(), parts.end(), [](auto p) { return p.second == 1; });
}

FactorPattern factor_pattern(const Poly& f) {
  FactorPattern pat;
  for (const auto& fp : algebra::factor(f))
    pat.parts.emplace_back(static_cast<unsigned>(fp.factor.degree().value()), static_cast<unsigned>(fp.multiplicity));
  std::sort(pat.parts.begin(), pat.parts.end());
  return pat;
}

std::uint64_t stabilizer_count_bruteforce(const Field& F, const MatN& T, const std::vector<GClass>& group) {
  std::uint64_t count = 0;
  for (const auto& g : group) {
    const MatN s = quadspace::similitude(F, g);
    if (algebra::mat_mul(F, s, T) == algebra::mat_mul(F, T, s)) ++count;
  }
  return count;
}

std::uint64_t stabilizer_count_bruteforce(const Field& F, const MatN& T, std::uint64_t cap) {
  require(T.rows() >= 4 && T.rows() % 2 == 0, "matrix size must be 2n+2");
  const auto group = quadspace::enumerate_G(F, static_cast<unsigned>(T.rows() / 2 - 1), cap);
  return stabilizer_count_bruteforce(F, T, group);
}

namespace {

// Roots over the algebraic closure, numbered so that each irreducible factor
// of degree d owns a block of d consecutive roots cycled by Frobenius.
struct RootModel {
  std::vector<unsigned> frobenius;  // root -> image
  std::vector<unsigned> multiplicity;
};

RootModel root_model(const FactorPattern& pattern) {
  RootModel rm;
  for (auto [deg, mult] : pattern.parts) {
    const unsigned base = static_cast<unsigned>(rm.frobenius.size());
    for (unsigned k = 0; k < deg; ++k) {
      rm.frobenius.push_back(base + (k + 1) % deg);
      rm.multiplicity.push_back(mult);
    }
  }
  return rm;
}

std::uint64_t apply_permutation(const std::vector<unsigned>& perm, std::uint64_t w) {
  std::uint64_t out = 0;
  for (unsigned i = 0; i < perm.size(); ++i)
    if (w >> i & 1U) out |= std::uint64_t{1} << perm[i];
  return out;
}

// Frobenius-fixed classes of W/⟨all-ones⟩ where W = {w : in_subspace(w)}.
template <class Member>
std::uint64_t fixed_classes(const RootModel& rm, Member in_subspace) {
  const unsigned t = static_cast<unsigned>(rm.frobenius.size());
  require(t <= 30, "too many roots for the bitmask model");
  const std::uint64_t ones = (std::uint64_t{1} << t) - 1;
  std::uint64_t fixed = 0;
  for (std::uint64_t w = 0; w <= ones; ++w) {
    if (!in_subspace(w)) continue;
    const std::uint64_t diff = apply_permutation(rm.frobenius, w) ^ w;
    if (diff == 0 || diff == ones) ++fixed;
  }
  return fixed / 2;
}

}  // namespace

std::uint64_t stabilizer_count_formula(const FactorPattern& pattern) {
  require(pattern.squarefree(), "stabilizer formula needs a squarefree pattern");
  const RootModel rm = root_model(pattern);
  return fixed_classes(rm, [](std::uint64_t w) { return __builtin_popcountll(w) % 2 == 0; });
}

std::uint64_t j2_count(const Poly& f, unsigned n) {
  require(f.is_monic() && f.degree() == algebra::Degree(2 * n + 2), "j2_count needs a monic polynomial of degree 2n+2");
  const RootModel rm = root_model(factor_pattern(f));
  // Generators: Q_i for each even-multiplicity root, P_j − P_r for pairs of
  // odd-multiplicity roots. Both cases of the description share one
  // ambient space F_2^{roots}/⟨1⟩; a vector lies in the span iff its
  // restriction to odd-multiplicity roots has even weight.
  std::uint64_t odd_mask = 0;
  for (unsigned i = 0; i < rm.multiplicity.size(); ++i)
    if (rm.multiplicity[i] % 2 == 1) odd_mask |= std::uint64_t{1} << i;
  return fixed_classes(rm, [odd_mask](std::uint64_t w) { return __builtin_popcountll(w & odd_mask) % 2 == 0; });
}

FiberCensus fiber_census(const Field& F, unsigned n, unsigned workers, std::uint64_t cap, unsigned parts) {
  const unsigned dv = dim_V(n);
  const std::uint64_t total = checked_pow(F.order(), dv, cap);
  const std::uint64_t nfibers = checked_pow(F.order(), 2 * n + 1, cap);
  const std::size_t N = matrix_dim(n);

  std::vector<std::vector<FiberStats>> partial(std::max(parts, 1U));
  run_partitioned(total, std::max(parts, 1U), resolve_workers(workers), [&](IndexRange range, std::size_t part) {
    auto& hist = partial[part];
    hist.assign(nfibers, FiberStats{});
    if (range.begin == range.end) return;
    std::vector<FieldElem> coords(dv);
    std::uint64_t idx = range.begin;
    for (auto& e : coords) {
      e = F.element(idx % F.order());
      idx /= F.order();
    }
    for (std::uint64_t i = range.begin; i < range.end; ++i) {
      const MatN T = v_element(F, n, coords);
      const auto cp = algebra::charpoly(F, T);
      std::uint64_t key = 0;
      for (std::size_t k = N - 1; k-- > 0;) key = key * F.order() + cp[N - (k + 2)].v;
      auto& slot = hist[key];
      ++slot.size;
      if (is_regular(F, T)) ++slot.regular;
      for (auto& e : coords) {
        if (++e.v < F.order()) break;
        e.v = 0;
      }
    }
  });

  FiberCensus out{n, F.order(), std::vector<FiberStats>(nfibers), 0, 0, 0, 0, 0};
  for (const auto& hist : partial)
    for (std::uint64_t k = 0; k < hist.size(); ++k) {
      out.fibers[k].size += hist[k].size;
      out.fibers[k].regular += hist[k].regular;
    }
  bool first = true;
  for (std::uint64_t k = 0; k < nfibers; ++k) {
    const auto& fs = out.fibers[k];
    out.total_regular += fs.regular;
    const Poly f = characteristic_poly(F, invariant_at(F, n, k));
    if (algebra::is_square_poly(f)) {
      ++out.square_fibers;
      out.max_square_regular = std::max(out.max_square_regular, fs.regular);
    } else {
      out.min_nonsquare_regular = first ? fs.regular : std::min(out.min_nonsquare_regular, fs.regular);
      out.max_nonsquare_regular = std::max(out.max_nonsquare_regular, fs.regular);
      first = false;
    }
  }
  return out;
}

}  // namespace selmerlab::vinberg
