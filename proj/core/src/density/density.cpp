#include "selmerlab/density/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "selmerlab/algebra/extension.hpp"
#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/algebra/matrix.hpp"
#include "selmerlab/funcfield/funcfield.hpp"
#include "selmerlab/quadspace/quadspace.hpp"
#include "selmerlab/support/errors.hpp"
#include "selmerlab/support/parallel.hpp"
#include "selmerlab/support/random.hpp"
#include "selmerlab/vinberg/vinberg.hpp"

namespace selmerlab::density {

using algebra::JetElem;
using algebra::JetRing;
using algebra::Poly;

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > cap / base) throw CapExceeded("exhaustive enumeration exceeds the cap");
    r *= base;
  }
  return r;
}

void decode_digits(const Field& F, std::uint64_t index, std::vector<FieldElem>& out) {
  for (auto& e : out) {
    e = F.element(index % F.order());
    index /= F.order();
  }
}

FieldElem random_element(const Field& F, SampleEngine& rng) { return F.element(rng() % F.order()); }

Poly random_poly(const Field& F, std::int64_t max_degree, SampleEngine& rng) {
  if (max_degree < 0) return Poly(F);
  std::vector<FieldElem> c(static_cast<std::size_t>(max_degree) + 1);
  for (auto& e : c) e = random_element(F, rng);
  return Poly(F, c);
}

// Sums per-block hit counts for `samples` draws split into kSampleBlock blocks.
template <class Draw>
std::uint64_t sample_hits(std::uint64_t samples, std::uint64_t seed, unsigned workers, Draw&& draw) {
  require(samples >= kMinSamples, "sampled densities need at least 100000 samples");
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  run_partitioned(blocks, static_cast<unsigned>(std::min<std::uint64_t>(blocks, 4096)), resolve_workers(workers),
                  [&](IndexRange range, std::size_t) {
                    for (std::uint64_t b = range.begin; b < range.end; ++b) {
                      SampleEngine rng = block_engine(seed, b);
                      const std::uint64_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
                      std::uint64_t h = 0;
                      for (std::uint64_t s = 0; s < count; ++s) h += draw(rng) ? 1 : 0;
                      hits[b] = h;
                    }
                  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

algebra::Matrix<JetElem> jet_matrix(const JetRing& J, const algebra::MatN& base, const algebra::MatN& tangent) {
  algebra::Matrix<JetElem> M(base.rows(), base.cols(), J.zero());
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j) M(i, j) = J.make(base(i, j), tangent(i, j));
  return M;
}

JetElem jet_disc_of_matrix(const JetRing& J, const algebra::Matrix<JetElem>& M) {
  return algebra::discriminant_of_monic(J, algebra::charpoly(J, M));
}

}  // namespace

std::string_view method_name(Method m) { return m == Method::exhaustive ? "exhaustive" : "monte-carlo"; }

DensityReport exhaustive_report(BigInt numerator, BigInt denominator) {
  DensityReport r;
  r.value = to_long_double(Rational(numerator, denominator));
  r.numerator = std::move(numerator);
  r.denominator = std::move(denominator);
  r.method = Method::exhaustive;
  return r;
}

DensityReport sampled_report(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
  require(samples > 0, "need at least one sample");
  DensityReport r;
  r.numerator = hits;
  r.denominator = samples;
  r.value = static_cast<long double>(hits) / static_cast<long double>(samples);
  r.method = Method::monte_carlo;
  r.samples = samples;
  r.sigma = std::sqrt(r.value * (1 - r.value) / static_cast<long double>(samples));
  r.half_width = kZ99 * r.sigma;
  r.seed = seed;
  return r;
}

JetElem jet_discriminant(const JetRing& J, unsigned n, const std::vector<JetElem>& c) {
  const std::size_t N = 2 * n + 2;
  require(c.size() == N - 1, "need 2n+1 jet coefficients");
  std::vector<JetElem> coeffs(N + 1, J.zero());
  coeffs[N] = J.one();
  for (std::size_t i = 2; i <= N; ++i) coeffs[N - i] = c[i - 2];
  return algebra::discriminant_of_monic(J, coeffs);
}

DensityReport alpha_v(const Field& F, unsigned n, unsigned workers, std::uint64_t cap) {
  const unsigned dim_s = 2 * n + 1;
  const std::uint64_t base = checked_pow(F.order(), dim_s, cap);
  const std::uint64_t total = checked_pow(F.order(), 2 * dim_s, cap);
  const JetRing J(F);
  const unsigned parts = 64;
  std::vector<std::uint64_t> partial(parts, 0);
  // Index = reduction + base·tangent.
  run_partitioned(total, parts, resolve_workers(workers), [&](IndexRange range, std::size_t part) {
    std::vector<FieldElem> lo(dim_s), hi(dim_s);
    std::vector<JetElem> c(dim_s);
    std::uint64_t hits = 0;
    for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
      decode_digits(F, idx % base, lo);
      decode_digits(F, idx / base, hi);
      for (unsigned k = 0; k < dim_s; ++k) c[k] = J.make(lo[k], hi[k]);
      if (J.is_zero(jet_discriminant(J, n, c))) ++hits;
    }
    partial[part] = hits;
  });
  std::uint64_t hits = 0;
  for (auto h : partial) hits += h;
  return exhaustive_report(hits, total);
}

DensityReport alpha_v_split(const Field& F, unsigned n, std::uint64_t cap) {
  const unsigned dim_s = 2 * n + 1;
  const std::size_t N = 2 * n + 2;
  const std::uint64_t base = checked_pow(F.order(), dim_s, cap);
  // Δ has degree ≤ 2N − 2 in each coefficient.
  const std::size_t npoints = 2 * N - 1;
  const Field E = algebra::extension_with_at_least(F, npoints);
  const algebra::FieldEmbedding emb(F, E);
  const algebra::Interpolator interp(E, npoints);

  auto poly_of = [&](const Field& K, const std::vector<FieldElem>& c) {
    std::vector<FieldElem> co(N + 1, K.zero());
    co[N] = K.one();
    for (std::size_t i = 2; i <= N; ++i) co[N - i] = c[i - 2];
    return Poly(K, co);
  };

  BigInt count = 0;
  const BigInt smooth_lifts = big_pow(F.order(), 2 * n);
  const BigInt singular_lifts = big_pow(F.order(), 2 * n + 1);
  std::vector<FieldElem> c(dim_s);
  for (std::uint64_t idx = 0; idx < base; ++idx) {
    decode_digits(F, idx, c);
    if (algebra::discriminant(poly_of(F, c)).v != 0) continue;
    bool smooth = false;
    std::vector<FieldElem> pushed(dim_s);
    for (unsigned k = 0; k < dim_s; ++k) pushed[k] = emb.push(c[k]);
    for (unsigned k = 0; k < dim_s && !smooth; ++k) {
      std::vector<FieldElem> values;
      for (FieldElem s : interp.points()) {
        auto shifted = pushed;
        shifted[k] = E.add(shifted[k], s);
        values.push_back(algebra::discriminant(poly_of(E, shifted)));
      }
      const auto coeffs = interp.coefficients(values);
      ensure(emb.pull(coeffs[1]).has_value(), "partial derivative left the base field");
      if (coeffs[1].v != 0) smooth = true;
    }
    count += smooth ? smooth_lifts : singular_lifts;
  }
  return exhaustive_report(count, big_pow(F.order(), 2 * dim_s));
}

DensityReport beta_v(const Field& F, unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  const unsigned dv = vinberg::dim_V(n);
  const JetRing J(F);
  const std::uint64_t hits = sample_hits(samples, seed, workers, [&](SampleEngine& rng) {
    std::vector<FieldElem> lo(dv), hi(dv);
    for (auto& e : lo) e = random_element(F, rng);
    for (auto& e : hi) e = random_element(F, rng);
    const auto M = jet_matrix(J, vinberg::v_element(F, n, lo), vinberg::v_element(F, n, hi));
    return J.is_zero(jet_disc_of_matrix(J, M));
  });
  return sampled_report(hits, samples, seed);
}

DensityReport beta_v_exact(const Field& F, unsigned n, std::uint64_t cap) {
  const unsigned dv = vinberg::dim_V(n);
  const std::uint64_t total = checked_pow(F.order(), dv, cap);
  const JetRing J(F);
  std::vector<algebra::MatN> basis;
  for (unsigned k = 0; k < dv; ++k) {
    std::vector<FieldElem> e(dv, F.zero());
    e[k] = F.one();
    basis.push_back(vinberg::v_element(F, n, e));
  }
  std::uint64_t flat = 0, sloped = 0;
  std::vector<FieldElem> coords(dv);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode_digits(F, idx, coords);
    const auto T = vinberg::v_element(F, n, coords);
    const auto cp = algebra::charpoly(F, T);
    if (algebra::discriminant_of_monic(F, cp).v != 0) continue;
    bool zero_gradient = true;
    for (unsigned k = 0; k < dv && zero_gradient; ++k) {
      const JetElem d = jet_disc_of_matrix(J, jet_matrix(J, T, basis[k]));
      ensure(d.a0.v == 0, "reduction of Δ changed under a tangent shift");
      if (d.a1.v != 0) zero_gradient = false;
    }
    ++(zero_gradient ? flat : sloped);
  }
  const BigInt numerator = BigInt(flat) * big_pow(F.order(), dv) + BigInt(sloped) * big_pow(F.order(), dv - 1);
  return exhaustive_report(numerator, big_pow(F.order(), 2 * dv));
}

Rational ratio_target(unsigned n, std::uint64_t q) { return quadspace::group_volume(n + 1, q); }

RatioCheck ratio_law(const DensityReport& alpha, const DensityReport& beta, unsigned n, std::uint64_t q) {
  RatioCheck r;
  const long double one_minus_alpha = 1 - alpha.value;
  r.ratio = (1 - beta.value) / one_minus_alpha;
  r.sigma = std::sqrt(beta.sigma * beta.sigma / (one_minus_alpha * one_minus_alpha) +
                      std::pow(alpha.sigma * (1 - beta.value) / (one_minus_alpha * one_minus_alpha), 2.0L));
  r.target = to_long_double(ratio_target(n, q));
  r.within_3_sigma = std::fabs(r.ratio - r.target) <= 3 * r.sigma;
  return r;
}

RegularDensity regular_density(const Field& F, unsigned n, unsigned workers, unsigned parts) {
  const auto census = vinberg::fiber_census(F, n, workers, vinberg::kDefaultCensusCap, parts);
  const BigInt g = quadspace::group_order(n + 1, F.order()).g_order;
  RegularDensity out;
  out.c_v = census.total_regular;
  out.report = exhaustive_report(out.c_v, big_pow(F.order(), vinberg::dim_V(n)));
  const std::uint64_t fibers = census.fibers.size();
  out.lower_bound = BigInt(fibers - census.square_fibers) * g;
  out.upper_bound = g * (big_pow(F.order(), 2 * n + 1) + big_pow(F.order(), n));
  out.within_bounds = out.lower_bound <= out.c_v && out.c_v <= out.upper_bound;
  return out;
}

DensityReport minimality_local(const Field& F, unsigned n, std::uint64_t cap) {
  // c_i mod ϖ^i has i digits; the tuple is non-minimal iff val(c_i) ≥ i for every i.
  const std::size_t N = 2 * n + 2;
  std::uint64_t digits = 0;
  for (std::size_t i = 2; i <= N; ++i) digits += i;
  const std::uint64_t total = checked_pow(F.order(), digits, cap);
  std::vector<FieldElem> d(digits);
  std::uint64_t minimal = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode_digits(F, idx, d);
    bool witness = false;
    std::size_t off = 0;
    for (std::size_t i = 2; i <= N; ++i) {
      std::size_t v = 0;
      while (v < i && d[off + v].v == 0) ++v;
      if (v < i) witness = true;
      off += i;
    }
    if (witness) ++minimal;
  }
  return exhaustive_report(minimal, total);
}

DensityReport minimality_global(const Field& F, unsigned n, std::int64_t d, std::uint64_t samples, std::uint64_t seed,
                                unsigned workers) {
  const std::size_t N = 2 * n + 2;
  const std::uint64_t hits = sample_hits(samples, seed, workers, [&](SampleEngine& rng) {
    std::vector<Poly> sections;
    for (std::size_t i = 2; i <= N; ++i) sections.push_back(random_poly(F, static_cast<std::int64_t>(i) * d, rng));
    if (std::all_of(sections.begin(), sections.end(), [](const Poly& p) { return p.is_zero(); })) return false;
    return funcfield::is_minimal(funcfield::model_from_sections(n, d, std::move(sections)));
  });
  return sampled_report(hits, samples, seed);
}

DensityReport minimality_global_exhaustive(const Field& F, unsigned n, std::int64_t d, std::uint64_t cap) {
  const std::size_t N = 2 * n + 2;
  std::uint64_t digits = 0;
  for (std::size_t i = 2; i <= N; ++i) digits += static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d) + 1;
  const std::uint64_t total = checked_pow(F.order(), digits, cap);
  std::vector<FieldElem> all(digits);
  std::uint64_t minimal = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode_digits(F, idx, all);
    std::vector<Poly> sections;
    std::size_t off = 0;
    bool nonzero = false;
    for (std::size_t i = 2; i <= N; ++i) {
      const std::size_t len = i * static_cast<std::size_t>(d) + 1;
      sections.emplace_back(F, std::vector<FieldElem>(all.begin() + static_cast<std::ptrdiff_t>(off),
                                                      all.begin() + static_cast<std::ptrdiff_t>(off + len)));
      nonzero |= !sections.back().is_zero();
      off += len;
    }
    if (nonzero && funcfield::is_minimal(funcfield::model_from_sections(n, d, std::move(sections)))) ++minimal;
  }
  return exhaustive_report(minimal, total);
}

SemistableCensus semistable_census(const Field& F, unsigned n, std::uint64_t cap) {
  const std::uint64_t total = checked_pow(F.order(), 2 * n + 1, cap);
  SemistableCensus out;
  out.total = total;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Poly f = vinberg::characteristic_poly(F, vinberg::invariant_at(F, n, idx));
    const bool non_ss = !algebra::is_semistable_poly(f);
    const bool square = algebra::is_square_poly(f);
    out.non_semistable += non_ss;
    out.square += square;
    out.union_count += (non_ss || square);
    out.intersection_count += (non_ss && square);
  }
  out.factor_intersection = 1 - Rational(out.intersection_count, total);
  out.factor_union = 1 - Rational(out.union_count, total);
  return out;
}

SquarefreeReport squarefree_disc_density(const Field& F, unsigned n, std::int64_t d, std::uint64_t samples,
                                         std::uint64_t seed, unsigned workers) {
  const std::size_t N = 2 * n + 2;
  const std::uint64_t bound = funcfield::discriminant_degree_bound(n, d);
  std::atomic<std::uint64_t> degenerate{0}, repeated{0}, deep{0};
  const std::uint64_t hits = sample_hits(samples, seed, workers, [&](SampleEngine& rng) {
    std::vector<Poly> sections;
    for (std::size_t i = 2; i <= N; ++i) sections.push_back(random_poly(F, static_cast<std::int64_t>(i) * d, rng));
    const Poly delta = funcfield::discriminant_in_t(F, n, sections);
    if (delta.is_zero()) {
      degenerate.fetch_add(1, std::memory_order_relaxed);
      return false;
    }
    if (!algebra::is_squarefree(algebra::monic(delta))) {
      repeated.fetch_add(1, std::memory_order_relaxed);
      return false;
    }
    if (bound - delta.degree().value() > 1) {
      deep.fetch_add(1, std::memory_order_relaxed);
      return false;
    }
    return true;
  });
  SquarefreeReport out;
  out.report = sampled_report(hits, samples, seed);
  out.degenerate = degenerate;
  out.finite_repeated = repeated;
  out.infinity_too_deep = deep;
  return out;
}

}  // namespace selmerlab::density
