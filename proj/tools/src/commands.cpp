#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "report.hpp"
#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/bundles/bundles.hpp"
#include "selmerlab/density/density.hpp"
#include "selmerlab/funcfield/funcfield.hpp"
#include "selmerlab/quadspace/quadspace.hpp"
#include "selmerlab/selfcheck/selfcheck.hpp"
#include "selmerlab/support/errors.hpp"
#include "selmerlab/support/random.hpp"
#include "selmerlab/vinberg/vinberg.hpp"
#include "selmerlab/zeta/zeta.hpp"

namespace selmerlab::cli {

namespace {

using algebra::Field;
using algebra::FieldElem;
using algebra::MatN;
using algebra::Poly;

void require_n(unsigned n) { require(n >= 1, "--n must be at least 1"); }

ordered_json density_json(const density::DensityReport& r) {
  ordered_json j;
  j["method"] = std::string(density::method_name(r.method));
  j["value"] = static_cast<double>(r.value);
  if (r.method == density::Method::exhaustive) {
    j["exact"] = str(r.exact());
  } else {
    j["samples"] = r.samples;
    j["hits"] = str(r.numerator);
    j["sigma"] = static_cast<double>(r.sigma);
    j["ci99"] = {static_cast<double>(r.value - r.half_width), static_cast<double>(r.value + r.half_width)};
  }
  return j;
}

// Polynomial coefficients low to high, comma separated. Integers are reduced
// mod p over prime fields and taken as element indices otherwise.
Poly parse_poly(const Field& F, const std::string& text) {
  std::vector<FieldElem> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw DomainError("bad coefficient '" + item + "'");
    }
    if (used == 0) throw DomainError("bad coefficient '" + item + "'");
    const long long q = F.order();
    if (F.degree() == 1) v = ((v % q) + q) % q;
    if (v < 0 || v >= q) throw DomainError("coefficient " + item + " is not a field element index");
    coeffs.push_back(F.element(static_cast<std::uint32_t>(v)));
  }
  return Poly(F, coeffs);
}

}  // namespace

int census(const Common& c, unsigned n, std::uint64_t q, std::uint64_t cap, const std::string& csv_path) {
  require_n(n);
  const Field F = Field::of_order(q);
  Report rep("census", c.workers);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}, {"cap", cap}};
  const auto census = vinberg::fiber_census(F, n, c.workers, cap);
  const auto orders = quadspace::group_order(n + 1, q);
  const BigInt bound = orders.g_order * (big_pow(q, 2 * n + 1) + big_pow(q, n));

  std::map<std::uint64_t, std::uint64_t> square_hist, nonsquare_hist;
  std::ostringstream csv;
  csv << "index,invariants,size,regular,square\n";
  for (std::uint64_t i = 0; i < census.fibers.size(); ++i) {
    const auto inv = vinberg::invariant_at(F, n, i);
    const Poly f = vinberg::characteristic_poly(F, inv);
    const bool square = algebra::is_square_poly(f);
    (square ? square_hist : nonsquare_hist)[census.fibers[i].regular]++;
    csv << i << ",";
    for (std::size_t k = 0; k < inv.coeffs.size(); ++k) csv << (k ? " " : "") << F.to_string(inv.coeffs[k]);
    csv << "," << census.fibers[i].size << "," << census.fibers[i].regular << "," << (square ? 1 : 0) << "\n";
  }
  auto hist_json = [](const std::map<std::uint64_t, std::uint64_t>& h) {
    ordered_json j = ordered_json::array();
    for (const auto& [regular, fibers] : h) j.push_back({{"regular", regular}, {"fibers", fibers}});
    return j;
  };
  b["fibers"] = census.fibers.size();
  b["square_fibers"] = census.square_fibers;
  b["histogram_square"] = hist_json(square_hist);
  b["histogram_nonsquare"] = hist_json(nonsquare_hist);
  b["c_v"] = census.total_regular;
  b["group_order"] = str(orders.g_order);
  b["c_v_bound"] = str(bound);
  rep.verdict("square_fibers_eq_q^n", BigInt(census.square_fibers) == big_pow(q, n));
  rep.verdict("nonsquare_fibers_eq_|G|", census.min_nonsquare_regular == orders.g_order &&
                                             census.max_nonsquare_regular == orders.g_order);
  rep.verdict("c_v_within_bound", BigInt(census.total_regular) <= bound);
  if (!csv_path.empty()) rep.write_text(csv_path, csv.str());
  return rep.write_json(c.out);
}

int density_alpha(const Common& c, unsigned n, std::uint64_t q) {
  require_n(n);
  const Field F = Field::of_order(q);
  Report rep("density alpha", c.workers);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}};
  const auto direct = density::alpha_v(F, n, c.workers);
  const auto split = density::alpha_v_split(F, n);
  b["alpha"] = density_json(direct);
  b["alpha_split_oracle"] = density_json(split);
  b["alpha_times_q2"] = static_cast<double>(to_long_double(direct.exact() * q * q));
  rep.verdict("matches_split_oracle", direct.exact() == split.exact());
  rep.verdict("alpha_q2_le_10", direct.exact() * q * q <= 10);
  return rep.write_json(c.out);
}

int density_beta(const Common& c, unsigned n, std::uint64_t q, std::uint64_t samples, std::uint64_t seed) {
  require_n(n);
  const Field F = Field::of_order(q);
  Report rep("density beta", c.workers);
  rep.set_seed(seed);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}, {"samples", samples}};
  const auto alpha = density::alpha_v(F, n, c.workers);
  const auto beta = density::beta_v(F, n, samples, seed, c.workers);
  const auto law = density::ratio_law(alpha, beta, n, q);
  b["alpha"] = density_json(alpha);
  b["beta"] = density_json(beta);
  b["ratio"] = {{"value", static_cast<double>(law.ratio)},
                {"sigma", static_cast<double>(law.sigma)},
                {"target", static_cast<double>(law.target)},
                {"target_exact", str(density::ratio_target(n, q))},
                {"group_volume", str(quadspace::group_volume(n + 1, q))}};
  rep.verdict("ratio_within_3_sigma", law.within_3_sigma);
  return rep.write_json(c.out);
}

int density_minimality(const Common& c, unsigned n, std::uint64_t q, std::int64_t d, std::uint64_t samples,
                       std::uint64_t seed) {
  require_n(n);
  require(d >= 1, "--d must be at least 1");
  const Field F = Field::of_order(q);
  Report rep("density minimality", c.workers);
  rep.set_seed(seed);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}, {"d", d}, {"samples", samples}};
  const unsigned s = (n + 2) * (2 * n + 1);
  const auto local = density::minimality_local(F, n);
  const Rational local_expected = 1 - rational_pow(q, -static_cast<std::int64_t>(s));
  const auto global = density::minimality_global(F, n, d, samples, seed, c.workers);
  const Rational global_expected = 1 / zeta::zeta_value(q, s);
  b["local"] = density_json(local);
  b["local_expected"] = str(local_expected);
  b["global"] = density_json(global);
  b["global_expected"] = str(global_expected);
  b["global_expected_value"] = static_cast<double>(to_long_double(global_expected));
  rep.verdict("local_exact", local.exact() == local_expected);
  rep.verdict("global_within_3_sigma",
              std::fabs(global.value - to_long_double(global_expected)) <= 3 * global.sigma);
  return rep.write_json(c.out);
}

int density_semistable(const Common& c, unsigned n, std::uint64_t q) {
  require_n(n);
  const Field F = Field::of_order(q);
  Report rep("density semistable", c.workers);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}};
  const auto s = density::semistable_census(F, n);
  b["total"] = s.total;
  b["non_semistable"] = s.non_semistable;
  b["square"] = s.square;
  b["union"] = s.union_count;
  b["intersection"] = s.intersection_count;
  b["non_semistable_over_q^(2n-1)"] = str(Rational(s.non_semistable) / big_pow(q, 2 * n - 1));
  b["factor_intersection"] = str(s.factor_intersection);
  b["factor_union"] = str(s.factor_union);
  rep.verdict("square_eq_q^n", BigInt(s.square) == big_pow(q, n));
  rep.verdict("inclusion_exclusion", s.union_count + s.intersection_count == s.square + s.non_semistable);
  return rep.write_json(c.out);
}

int density_sqfree(const Common& c, unsigned n, std::uint64_t q, std::int64_t d, std::uint64_t samples,
                   std::uint64_t seed) {
  require_n(n);
  require(d >= 1, "--d must be at least 1");
  const Field F = Field::of_order(q);
  Report rep("density sqfree", c.workers);
  rep.set_seed(seed);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}, {"d", d}, {"samples", samples}};
  const auto r = density::squarefree_disc_density(F, n, d, samples, seed, c.workers);
  b["squarefree"] = density_json(r.report);
  b["rejected"] = {{"discriminant_zero", r.degenerate},
                   {"repeated_finite_root", r.finite_repeated},
                   {"order_two_at_infinity", r.infinity_too_deep}};
  b["discriminant_degree_bound"] = funcfield::discriminant_degree_bound(n, d);
  rep.verdict("positive_at_99", r.report.value - r.report.half_width > 0);
  return rep.write_json(c.out);
}

int constants(const Common& c, unsigned n, std::uint64_t q, unsigned truncation) {
  require_n(n);
  Report rep("constants", c.workers);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}, {"truncation", truncation}};
  const auto k = zeta::average_constants(n, q, truncation);
  auto euler = [](const zeta::EulerProduct& e) {
    return ordered_json{{"value", static_cast<double>(e.value)}, {"error_bound", static_cast<double>(e.error_bound)}};
  };
  const long double upper_delta = std::fabs(k.upper_bound_euler.value - to_long_double(k.upper_bound_closed));
  const long double tamagawa_delta = std::fabs(k.tamagawa_euler.value - to_long_double(k.tamagawa_closed));
  b["upper_bound"] = {{"closed", str(k.upper_bound_closed)},
                      {"closed_value", static_cast<double>(to_long_double(k.upper_bound_closed))},
                      {"euler", euler(k.upper_bound_euler)},
                      {"delta", static_cast<double>(upper_delta)}};
  b["tamagawa"] = {{"closed", str(k.tamagawa_closed)},
                   {"closed_value", static_cast<double>(to_long_double(k.tamagawa_closed))},
                   {"euler", euler(k.tamagawa_euler)},
                   {"delta", static_cast<double>(tamagawa_delta)}};
  b["minimality"] = str(k.minimality);
  b["transversal_limit"] = k.transversal_limit;
  b["semistable_limit"] = k.semistable_limit;
  b["dim_v"] = k.dim_v;
  b["dim_g"] = k.dim_g;
  rep.verdict("routes_agree", upper_delta <= k.upper_bound_euler.error_bound + 1e-12L &&
                                  tamagawa_delta <= k.tamagawa_euler.error_bound + 1e-12L);
  return rep.write_json(c.out);
}

int table1(const Common& c, unsigned n, std::int64_t f_max, std::int64_t d_max) {
  require_n(n);
  require(f_max >= 0 && d_max >= 0, "--f-max and --d-max must be non-negative");
  Report rep("table1", c.workers);
  std::string csv = "f,d,h,ranks,slopes,row,contribution,lemma_family,lemma_e,log_ratio,bound,holds\n";
  std::uint64_t gaps = 0, violations = 0, mismatches = 0, profiles = 0;
  for (std::int64_t f = 0; f <= f_max; ++f)
    for (std::int64_t d = 0; d <= d_max; ++d)
      bundles::for_each_profile(n, f, d, [&](const bundles::SlopeProfile& p) {
        ++profiles;
        std::string ranks, slopes;
        for (std::size_t i = 0; i < p.ranks.size(); ++i) {
          ranks += (i ? " " : "") + std::to_string(p.ranks[i]);
          slopes += (i ? " " : "") + p.slopes[i].to_string();
        }
        bundles::CaseRow row;
        try {
          row = bundles::case_classify(p, f);
        } catch (const InvariantViolation&) {
          ++gaps;
          csv += fmt::format("{},{},{},{},{},gap,,,,,,\n", f, d, p.h, ranks, slopes);
          return;
        }
        const auto contribution = bundles::contribution_of(row);
        const bool extremal =
            p.is_borel() && 2 * p.slopes.front() - bundles::HalfInt::whole(d) ==
                                bundles::HalfInt::whole((2 * static_cast<std::int64_t>(n) + 1) * f);
        if ((contribution == bundles::Contribution::one) != extremal) ++mismatches;
        std::string lemma = ",,,,";
        if (const auto fam = bundles::lemma_family(p, f)) {
          lemma = fmt::format("{},{},{},{},{}", fam->family, fam->e, fam->log_ratio.to_string(), fam->bound.to_string(),
                              fam->holds ? 1 : 0);
          if (!fam->holds) ++violations;
        }
        csv += fmt::format("{},{},{},{},{},{},{},{}\n", f, d, p.h, ranks, slopes, bundles::row_name(row),
                           bundles::contribution_name(contribution), lemma);
      });
  rep.verdict("no_gaps", gaps == 0);
  rep.verdict("lemma_families_hold", violations == 0);
  rep.verdict("contribution_one_exact", mismatches == 0);
  std::cerr << fmt::format("{} profiles, {} gaps, {} lemma violations, {} contribution-1 mismatches\n", profiles, gaps,
                           violations, mismatches);
  return rep.write_text(c.out, csv);
}

int reduce(const Common& c, unsigned n, std::uint64_t q, unsigned trials, std::uint64_t seed) {
  require_n(n);
  const Field F = Field::of_order(q);
  Report rep("reduce", c.workers);
  rep.set_seed(seed);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}, {"trials", trials}};
  SampleEngine rng = block_engine(seed, 0);
  std::uint64_t successes = 0;
  ordered_json failures = ordered_json::array();
  for (unsigned k = 0; k < trials; ++k) {
    vinberg::Invariant inv{n, {}};
    for (unsigned i = 0; i < 2 * n + 1; ++i) inv.coeffs.push_back(F.element(static_cast<std::uint32_t>(rng() % q)));
    const MatN target = vinberg::kostant1(F, inv);
    const MatN g0 = bundles::random_borel_orthogonal(F, n, rng);
    const MatN A = algebra::mat_mul(F, algebra::mat_mul(F, g0, target), *algebra::inverse(F, g0));
    try {
      const auto red = bundles::kostant_reduce(F, A);
      const bool ok = red.result == target && quadspace::multiplier(F, red.conjugator) == F.one() &&
                      algebra::det(F, red.conjugator) == F.one();
      if (ok)
        ++successes;
      else
        failures.push_back(k);
    } catch (const Error& e) {
      failures.push_back({{"trial", k}, {"error", e.what()}});
    }
  }
  b["successes"] = successes;
  b["failures"] = failures;
  rep.verdict("all_round_trips", successes == trials);
  return rep.write_json(c.out);
}

int j2(const Common& c, std::uint64_t q, const std::string& poly) {
  const Field F = Field::of_order(q);
  const Poly f = parse_poly(F, poly);
  require(!f.is_zero() && f.degree().value() >= 4 && f.degree().value() % 2 == 0,
          "polynomial must have even degree 2n+2 ≥ 4");
  require(algebra::monic(f) == f, "polynomial must be monic");
  const unsigned n = static_cast<unsigned>(f.degree().value() / 2 - 1);
  Report rep("j2", c.workers);
  auto& b = rep.body();
  b["config"] = {{"q", q}, {"poly", f.to_string()}};
  const auto pattern = vinberg::factor_pattern(f);
  ordered_json parts = ordered_json::array();
  for (const auto& [deg, mult] : pattern.parts) parts.push_back({{"degree", deg}, {"multiplicity", mult}});
  b["n"] = n;
  b["factor_pattern"] = parts;
  b["squarefree"] = pattern.squarefree();
  b["j2_count"] = vinberg::j2_count(f, n);
  if (pattern.squarefree()) {
    b["stabilizer_formula"] = vinberg::stabilizer_count_formula(pattern);
    rep.verdict("j2_matches_stabilizer", vinberg::j2_count(f, n) == vinberg::stabilizer_count_formula(pattern));
  }
  return rep.write_json(c.out);
}

int minmodel(const Common& c, unsigned n, std::uint64_t q, const std::string& sections) {
  require_n(n);
  const Field F = Field::of_order(q);
  std::vector<Poly> cs;
  std::stringstream ss(sections);
  std::string item;
  while (std::getline(ss, item, ';')) cs.push_back(parse_poly(F, item));
  require(cs.size() == 2 * n + 1, fmt::format("expected {} sections c_2..c_{}", 2 * n + 1, 2 * n + 2));
  Report rep("minmodel", c.workers);
  auto& b = rep.body();
  b["config"] = {{"n", n}, {"q", q}, {"sections", sections}};
  const auto m = funcfield::minimal_model(n, cs);
  b["height"] = m.height;
  ordered_json ex = ordered_json::array();
  for (const auto& pe : m.exponents)
    ex.push_back({{"place", pe.place.is_infinity() ? std::string("inf") : pe.place.prime().to_string('t')},
                  {"exponent", pe.exponent}});
  b["exponents"] = ex;
  ordered_json secs = ordered_json::array();
  for (const auto& s : m.sections) secs.push_back(s.to_string('t'));
  b["sections"] = secs;
  b["aut_order"] = m.height >= 0 ? funcfield::aut_order(m) : 0;
  const Poly delta = funcfield::discriminant_in_t(F, n, m.sections);
  b["discriminant"] = delta.to_string('t');
  if (!delta.is_zero()) {
    const auto tr = funcfield::transversality(m);
    b["transversal"] = tr.transversal;
    b["order_at_infinity"] = tr.order_at_infinity;
  }
  rep.verdict("minimal", funcfield::is_minimal(m));
  return rep.write_json(c.out);
}

int selfcheck(const Common& c, bool quick, std::uint64_t seed) {
  Report rep(quick ? "selfcheck --quick" : "selfcheck", c.workers);
  selfcheck::Options options;
  options.quick = quick;
  options.workers = c.workers;
  options.seed = seed;
  std::string text;
  const auto results = selfcheck::run(options, [&](const selfcheck::Result& r) {
    const char* tag = r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL";
    std::cerr << fmt::format("[{}] {:2} {} ({:.2f}s)\n", tag, r.id, r.name, r.seconds);
    text += fmt::format("[{}] {:2} {:<32} {}\n", tag, r.id, r.name, r.detail);
  });
  for (const auto& r : results) rep.verdict(std::to_string(r.id), r.passed);
  text += rep.passed() ? "all criteria passed\n" : "some criteria FAILED\n";
  return rep.write_text(c.out, text);
}

}  // namespace selmerlab::cli
