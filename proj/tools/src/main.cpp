#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "report.hpp"
#include "selmerlab/support/errors.hpp"
#include "selmerlab/support/parallel.hpp"
#include "selmerlab/support/version.hpp"

using namespace selmerlab;

int main(int argc, char** argv) {
  CLI::App app{"Point counts, densities and bundle bookkeeping for even hyperelliptic curves over F_q(t)"};
  app.set_version_flag("--version", std::string(selmerlab::version()));
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  cli::Common common;
  unsigned workers_flag = 0;
  app.add_option("--workers", workers_flag, "worker threads (overrides SELMERLAB_WORKERS)")->check(CLI::Range(1, 256));
  app.add_option("-o,--out", common.out, "output file, '-' for stdout");

  unsigned n = 1;
  std::uint64_t q = 5, seed = 0, samples = 100'000, cap = 1'000'000'000;
  std::int64_t d = 2, f_max = 12, d_max = -1;
  unsigned truncation = 30, trials = 500;
  bool quick = false;
  std::string csv_path, poly, sections;

  auto add_nq = [&](CLI::App* sub) {
    sub->add_option("--n", n, "genus parameter, deg f = 2n+2")->check(CLI::PositiveNumber);
    sub->add_option("--q", q, "field size (odd prime power)");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--samples", samples, "Monte Carlo samples");
    sub->add_option("--seed", seed, "random seed")->required();
  };

  auto* census = app.add_subcommand("census", "exhaustive fiber census of the regular locus");
  add_nq(census);
  census->add_option("--cap", cap, "maximum number of elements to enumerate");
  census->add_option("--csv", csv_path, "also write the per-fiber table to this CSV file");

  auto* density = app.add_subcommand("density", "local and global densities");
  density->require_subcommand(1);
  density->fallthrough();
  auto* alpha = density->add_subcommand("alpha", "exhaustive mod-ϖ² discriminant density");
  add_nq(alpha);
  auto* beta = density->add_subcommand("beta", "sampled regular-and-transversal density with the ratio law");
  add_nq(beta);
  add_mc(beta);
  auto* minimality = density->add_subcommand("minimality", "local and global minimality densities");
  add_nq(minimality);
  minimality->add_option("--d", d, "height");
  add_mc(minimality);
  auto* semistable = density->add_subcommand("semistable", "semistable and square fiber census");
  add_nq(semistable);
  auto* sqfree = density->add_subcommand("sqfree", "squarefree discriminant density at height d");
  add_nq(sqfree);
  sqfree->add_option("--d", d, "height")->required();
  add_mc(sqfree);

  auto* constants = app.add_subcommand("constants", "average constants by closed form and Euler product");
  add_nq(constants);
  constants->add_option("--truncation", truncation, "largest place degree in the Euler products");

  auto* table1 = app.add_subcommand("table1", "classify slope profiles and check the zero-contribution bounds");
  table1->add_option("--n", n)->check(CLI::PositiveNumber);
  table1->add_option("--f-max", f_max, "largest twist f");
  table1->add_option("--d-max", d_max, "largest degree d (default 2·f-max)");

  auto* reduce = app.add_subcommand("reduce", "round-trip Borel conjugates of the Kostant section");
  add_nq(reduce);
  reduce->add_option("--trials", trials);
  reduce->add_option("--seed", seed)->required();

  auto* j2 = app.add_subcommand("j2", "rational 2-torsion of the Jacobian of y² = f");
  j2->add_option("--q", q);
  j2->add_option("--poly", poly, "monic f, coefficients low to high, comma separated")->required();

  auto* minmodel = app.add_subcommand("minmodel", "minimal integral model of c_2..c_{2n+2} in F_q[t]");
  add_nq(minmodel);
  minmodel->add_option("--sections", sections, "c_2;...;c_{2n+2}, each low-to-high comma separated")->required();

  auto* selfcheck = app.add_subcommand("selfcheck", "run the acceptance criteria");
  selfcheck->add_flag("--quick", quick, "skip the long-running criteria");
  selfcheck->add_option("--seed", seed, "random seed")->default_val(20240611);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  try {
    common.workers = resolve_workers(workers_flag);
    if (*census) return cli::census(common, n, q, cap, csv_path);
    if (*alpha) return cli::density_alpha(common, n, q);
    if (*beta) return cli::density_beta(common, n, q, samples, seed);
    if (*minimality) return cli::density_minimality(common, n, q, d, samples, seed);
    if (*semistable) return cli::density_semistable(common, n, q);
    if (*sqfree) return cli::density_sqfree(common, n, q, d, samples, seed);
    if (*constants) return cli::constants(common, n, q, truncation);
    if (*table1) return cli::table1(common, n, f_max, d_max < 0 ? 2 * f_max : d_max);
    if (*reduce) return cli::reduce(common, n, q, trials, seed);
    if (*j2) return cli::j2(common, q, poly);
    if (*minmodel) return cli::minmodel(common, n, q, sections);
    if (*selfcheck) return cli::selfcheck(common, quick, seed);
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return cli::kExitCap;
  } catch (const DomainError& e) {
    std::cerr << "bad configuration: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return cli::kExitAssertion;
  }
  return cli::kExitConfig;
}
