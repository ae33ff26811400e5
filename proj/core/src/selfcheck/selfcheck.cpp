#include "selmerlab/selfcheck/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/bundles/bundles.hpp"
#include "selmerlab/density/density.hpp"
#include "selmerlab/funcfield/funcfield.hpp"
#include "selmerlab/quadspace/quadspace.hpp"
#include "selmerlab/support/errors.hpp"
#include "selmerlab/support/random.hpp"
#include "selmerlab/vinberg/vinberg.hpp"
#include "selmerlab/zeta/zeta.hpp"

namespace selmerlab::selfcheck {

namespace {

using algebra::Field;
using algebra::FieldElem;
using algebra::MatN;
using algebra::Poly;

// Pinned tolerances and budgets.
constexpr double kCensusBudgetSingle = 600;
constexpr double kCensusBudgetEight = 120;
constexpr double kTable1Budget = 60;
constexpr long double kEulerTolerance = 1e-9L;
constexpr long double kLimitTolerance = 1e-5L;
constexpr long double kSigmas = 3;
constexpr std::uint64_t kMonteCarloSamples = 1'000'000;
constexpr std::uint64_t kSemistableConstant = 2;  // |S^{non-ss}(F_q)|/q^{2n-1} ≤ this

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

vinberg::Invariant random_invariant(const Field& F, unsigned n, SampleEngine& rng) {
  vinberg::Invariant c{n, {}};
  for (unsigned i = 0; i < 2 * n + 1; ++i) c.coeffs.push_back(F.element(static_cast<std::uint32_t>(rng() % F.order())));
  return c;
}

Result census_q5(const Options& o) {
  const Field F = Field::of_order(5);
  const auto start = std::chrono::steady_clock::now();
  const auto census = vinberg::fiber_census(F, 1, o.workers);
  const double secs = elapsed(start);
  const BigInt g = quadspace::group_order(2, 5).g_order;
  const BigInt ceiling = g * 130;
  const double budget = o.workers >= 8 ? kCensusBudgetEight : kCensusBudgetSingle;
  const bool squares = census.square_fibers == 5;
  const bool fibers = census.min_nonsquare_regular == g && census.max_nonsquare_regular == g;
  const bool total = BigInt(census.total_regular) <= ceiling;
  const bool fast = secs <= budget;
  std::ostringstream os;
  os << "square fibers " << census.square_fibers << " (want 5); non-square fibers hold "
     << census.min_nonsquare_regular << ".." << census.max_nonsquare_regular << " regular (want " << g
     << "); c_v " << census.total_regular << " <= " << ceiling << (fast ? "; within" : "; over") << " time budget";
  return {1, {}, squares && fibers && total && fast, false, os.str()};
}

Result group_orders(const Options&) {
  const auto so = quadspace::enumerate_special_orthogonal(Field::of_order(3), 1);
  const BigInt formula = quadspace::group_order(2, 3).so_order;
  const auto classes = quadspace::enumerate_G(Field::of_order(5), 1);
  const std::set<quadspace::GClass> distinct(classes.begin(), classes.end());
  const BigInt g5 = quadspace::group_order(2, 5).g_order;
  std::ostringstream os;
  os << "|SO4(F3)| enumerated " << so.size() << ", formula " << formula << "; G(F5) classes " << distinct.size()
     << " distinct of " << classes.size() << ", formula " << g5;
  const bool ok = BigInt(so.size()) == formula && formula == 576 && distinct.size() == classes.size() &&
                  BigInt(distinct.size()) == g5 && g5 == 14400;
  return {2, {}, ok, false, os.str()};
}

Result kostant_round_trip(const Options& o) {
  SampleEngine rng = block_engine(o.seed, 3);
  unsigned failures = 0, trials = 0;
  for (unsigned n : {1u, 2u}) {
    const Field F = Field::of_order(5);
    for (int k = 0; k < 1000; ++k, ++trials) {
      const auto c = random_invariant(F, n, rng);
      const auto k1 = vinberg::kostant1(F, c), k2 = vinberg::kostant2(F, c);
      if (!(vinberg::invariants_of(F, k1) == c) || !(vinberg::invariants_of(F, k2) == c) ||
          !vinberg::is_regular(F, k1) || !vinberg::is_regular(F, k2))
        ++failures;
    }
  }
  std::ostringstream os;
  os << trials << " invariants at n=1,2 over F5; " << failures << " failures";
  return {3, {}, failures == 0, false, os.str()};
}

Result stabilizer_triangle(const Options& o) {
  SampleEngine rng = block_engine(o.seed, 4);
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t q : {3ull, 5ull}) {
    const Field F = Field::of_order(q);
    const auto G = quadspace::enumerate_G(F, 1);
    unsigned tested = 0, mismatches = 0, bad_values = 0;
    std::set<std::uint64_t> seen;
    while (tested < 100) {
      std::vector<FieldElem> coords;
      for (unsigned i = 0; i < vinberg::dim_V(1); ++i) coords.push_back(F.element(static_cast<std::uint32_t>(rng() % q)));
      const MatN T = vinberg::v_element(F, 1, coords);
      if (!vinberg::is_regular(F, T)) continue;
      const Poly f = vinberg::characteristic_poly(F, vinberg::invariants_of(F, T));
      if (!algebra::is_squarefree(f)) continue;
      ++tested;
      const auto brute = vinberg::stabilizer_count_bruteforce(F, T, G);
      const auto formula = vinberg::stabilizer_count_formula(vinberg::factor_pattern(f));
      const auto j2 = vinberg::j2_count(f, 1);
      if (brute != formula || formula != j2) ++mismatches;
      if (brute == 0 || brute > 4 || (brute & (brute - 1)) != 0) ++bad_values;
      seen.insert(brute);
    }
    ok = ok && mismatches == 0 && bad_values == 0;
    os << "q=" << q << ": " << tested << " elements, " << mismatches << " mismatches, values {";
    for (auto it = seen.begin(); it != seen.end(); ++it) os << (it == seen.begin() ? "" : ",") << *it;
    os << "}; ";
  }
  std::string s = os.str();
  s.resize(s.size() - 2);
  return {4, {}, ok, false, s};
}

Result kostant_reduction(const Options& o) {
  SampleEngine rng = block_engine(o.seed, 5);
  const Field F = Field::of_order(5);
  unsigned failures = 0, trials = 0;
  for (unsigned n : {1u, 2u}) {
    for (int k = 0; k < 500; ++k, ++trials) {
      const auto c = random_invariant(F, n, rng);
      const MatN target = vinberg::kostant1(F, c);
      const MatN b = bundles::random_borel_orthogonal(F, n, rng);
      const MatN A = algebra::mat_mul(F, algebra::mat_mul(F, b, target), *algebra::inverse(F, b));
      try {
        const auto red = bundles::kostant_reduce(F, A);
        const MatN& g = red.conjugator;
        const bool orthogonal = quadspace::multiplier(F, g) == F.one();
        const bool special = algebra::det(F, g) == F.one();
        const bool lands = red.result == target &&
                           algebra::mat_mul(F, algebra::mat_mul(F, g, A), *algebra::inverse(F, g)) == target;
        if (!(orthogonal && special && lands)) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  std::ostringstream os;
  os << trials << " Borel conjugates of the section over F5; " << failures << " failures";
  return {5, {}, failures == 0, false, os.str()};
}

Result alpha(const Options& o) {
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t q : {3ull, 5ull, 7ull}) {
    const Field F = Field::of_order(q);
    const auto direct = density::alpha_v(F, 1, o.workers);
    const Rational scaled = direct.exact() * q * q;
    const bool small = scaled <= 10;
    bool agree = true;
    if (q != 7) agree = direct.exact() == density::alpha_v_split(F, 1).exact();
    ok = ok && small && agree;
    os << "q=" << q << ": alpha " << direct.exact() << (q != 7 ? (agree ? " matches" : " differs from") : "")
       << (q != 7 ? " split oracle" : "") << ", alpha*q^2=" << static_cast<double>(to_long_double(scaled)) << "; ";
  }
  std::string s = os.str();
  s.resize(s.size() - 2);
  return {6, {}, ok, false, s};
}

Result ratio_law(const Options& o) {
  const Field F = Field::of_order(5);
  const auto a = density::alpha_v(F, 1, o.workers);
  const auto b = density::beta_v(F, 1, kMonteCarloSamples, o.seed, o.workers);
  const auto r = density::ratio_law(a, b, 1, 5);
  const bool target_ok = density::ratio_target(1, 5) == Rational(14400, 15625);
  const bool ok = target_ok && std::fabs(r.ratio - r.target) <= kSigmas * r.sigma;
  std::ostringstream os;
  os.precision(6);
  os << "(1-beta)/(1-alpha)=" << static_cast<double>(r.ratio) << " sigma=" << static_cast<double>(r.sigma)
     << " target=" << static_cast<double>(r.target) << " with " << b.samples << " samples, seed " << b.seed;
  return {7, {}, ok, false, os.str()};
}

Result minimality(const Options& o) {
  const auto local = density::minimality_local(Field::of_order(3), 1);
  const Rational local_expected = 1 - rational_pow(3, -9);
  const auto global = density::minimality_global(Field::of_order(5), 1, 2, kMonteCarloSamples, o.seed, o.workers);
  const long double target = to_long_double(1 / zeta::zeta_value(5, 9));
  const bool ok = local.exact() == local_expected && std::fabs(global.value - target) <= kSigmas * global.sigma;
  std::ostringstream os;
  os.precision(8);
  os << "local " << local.exact() << " (want " << local_expected << "); global " << static_cast<double>(global.value)
     << " sigma=" << static_cast<double>(global.sigma) << " target " << static_cast<double>(target);
  return {8, {}, ok, false, os.str()};
}

Result euler_products(const Options&) {
  const auto ctx = zeta::ZetaContext::projective_line(5, 30);
  const auto prod = zeta::euler_product(ctx, zeta::one_plus_power(2));
  const long double closed = to_long_double(zeta::zeta_value(5, 2) / zeta::zeta_value(5, 4));
  const long double gap = std::fabs(prod.value - closed);
  bool ok = gap < kEulerTolerance;
  std::ostringstream os;
  os.precision(3);
  os << "prod(1+q_v^-2) vs zeta(2)/zeta(4): gap " << static_cast<double>(gap);
  for (unsigned n : {1u, 2u}) {
    const auto c = zeta::average_constants(n, 5);
    const long double g = std::fabs(c.tamagawa_euler.value - to_long_double(c.tamagawa_closed));
    ok = ok && g < kEulerTolerance;
    os << "; tamagawa n=" << n << " gap " << static_cast<double>(g);
  }
  return {9, {}, ok, false, os.str()};
}

Result large_q_limit(const Options&) {
  const auto c = zeta::average_constants(1, 1'000'000);
  const long double gap = std::fabs(c.upper_bound_euler.value - 6);
  std::ostringstream os;
  os.precision(10);
  os << "4*prod(1+q_v^-2)+2 at q=10^6: " << static_cast<double>(c.upper_bound_euler.value) << ", |.-6|="
     << static_cast<double>(gap);
  return {10, {}, gap <= kLimitTolerance, false, os.str()};
}

Result table1(const Options&) {
  const auto start = std::chrono::steady_clock::now();
  const auto s = bundles::profile_sweep(1, 12, 24);
  const bool fast = elapsed(start) <= kTable1Budget;
  const bool ok = s.gaps == 0 && s.family_violations == 0 && s.contribution_one > 0 &&
                  s.contribution_one_mismatches == 0 && fast;
  std::ostringstream os;
  os << s.profiles << " profiles, " << s.gaps << " gaps, " << s.family_checked << " lemma-family profiles with "
     << s.family_violations << " violations, " << s.contribution_one << " contribution-1 profiles with "
     << s.contribution_one_mismatches << " mismatches" << (fast ? "; within" : "; over") << " time budget";
  return {11, {}, ok, false, os.str()};
}

Result vanishing(const Options& o) {
  SampleEngine rng = block_engine(o.seed, 12);
  const Field F = Field::of_order(5);
  unsigned counterexamples = 0, total = 0;
  for (unsigned k = 0; k < 100; ++k, ++total) {
    const unsigned n = 1 + k % 2;
    const unsigned index = 1 + (k / 2) % (n + 1);
    const FieldElem root = F.element(static_cast<std::uint32_t>(rng() % 5));
    const auto section = bundles::random_vanishing_section(F, n, index, root, rng);
    const auto place = funcfield::Place::finite(Poly(F, {F.neg(root), F.one()}));
    if (!bundles::disc_vanishing_check(F, n, section, place, index).at_least_two) ++counterexamples;
  }
  std::ostringstream os;
  os << total << " Borel sections with a vanishing sub-diagonal entry; " << counterexamples << " counterexamples";
  return {12, {}, counterexamples == 0, false, os.str()};
}

Result squarefree(const Options& o) {
  const Field F = Field::of_order(5);
  std::vector<density::SquarefreeReport> reports;
  std::ostringstream os;
  os.precision(6);
  bool ok = true;
  for (std::int64_t d : {1, 2, 3}) {
    reports.push_back(density::squarefree_disc_density(F, 1, d, kMonteCarloSamples, o.seed + d, o.workers));
    const auto& r = reports.back().report;
    ok = ok && r.value - r.half_width > 0;
    os << "d=" << d << ": " << static_cast<double>(r.value) << " +- " << static_cast<double>(r.half_width) << "; ";
  }
  const auto& a = reports[1].report;
  const auto& b = reports[2].report;
  const long double combined = std::sqrt(a.sigma * a.sigma + b.sigma * b.sigma);
  const bool agree = std::fabs(a.value - b.value) <= kSigmas * combined;
  os << "d=2 vs d=3 gap " << static_cast<double>(std::fabs(a.value - b.value)) << " vs 3 sigma "
     << static_cast<double>(kSigmas * combined);
  return {13, {}, ok && agree, false, os.str()};
}

Result torsion(const Options&) {
  const auto census = funcfield::rational_2torsion_census(Field::of_order(3), 1, 1);
  const Rational bound = funcfield::rational_2torsion_bound(1, 3, 1);
  std::ostringstream os;
  os << census.total << " tuples with a rational 2-torsion witness (" << census.even_factorization << " even, "
     << census.conjugate_pair << " conjugate pair); bound " << bound;
  return {14, {}, Rational(census.total) <= bound && census.total > 0, false, os.str()};
}

Result semistable(const Options&) {
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t q : {3ull, 5ull, 7ull}) {
    const auto c = density::semistable_census(Field::of_order(q), 1);
    const Rational scaled(c.non_semistable, q);
    ok = ok && c.square == q && scaled <= kSemistableConstant;
    os << "q=" << q << ": square " << c.square << ", non-semistable/q " << scaled << "; ";
  }
  os << "constant " << kSemistableConstant;
  return {15, {}, ok, false, os.str()};
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "fiber census n=1 q=5", true, census_q5},
      {2, "group order cross-check", false, group_orders},
      {3, "Kostant round trip", false, kostant_round_trip},
      {4, "stabilizer triangle", false, stabilizer_triangle},
      {5, "Kostant reduction", false, kostant_reduction},
      {6, "alpha_v exhaustive", false, alpha},
      {7, "transversal ratio law", true, ratio_law},
      {8, "minimality densities", false, minimality},
      {9, "Euler product identities", false, euler_products},
      {10, "large-q limit", false, large_q_limit},
      {11, "slope-profile sweep", false, table1},
      {12, "transversal vanishing", false, vanishing},
      {13, "squarefree discriminant density", true, squarefree},
      {14, "rational 2-torsion bound", false, torsion},
      {15, "semistable census", false, semistable},
  };
  return all;
}

std::vector<Result> run(const Options& options, const std::function<void(const Result&)>& on_result) {
  std::vector<Result> out;
  for (const auto& c : criteria()) {
    Result r;
    const auto start = std::chrono::steady_clock::now();
    if (options.quick && c.heavy) {
      r.skipped = true;
      r.passed = true;
      r.detail = "skipped in quick mode";
    } else {
      try {
        r = c.run(options);
      } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
      }
    }
    r.id = c.id;
    r.name = c.name;
    r.seconds = elapsed(start);
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

bool all_passed(const std::vector<Result>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace selmerlab::selfcheck
