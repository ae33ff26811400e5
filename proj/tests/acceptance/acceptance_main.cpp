// Runs every acceptance criterion and prints one verdict line per criterion.
// Workers come from SELMERLAB_WORKERS; the seed is fixed so runs are repeatable.

#include <cstdio>

#include "selmerlab/selfcheck/selfcheck.hpp"
#include "selmerlab/support/parallel.hpp"

int main() {
  selmerlab::selfcheck::Options options;
  options.workers = selmerlab::resolve_workers(0);
  const auto results = selmerlab::selfcheck::run(options, [](const selmerlab::selfcheck::Result& r) {
    std::printf("[%s] %2u %-32s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  });
  const bool ok = selmerlab::selfcheck::all_passed(results);
  std::printf("%s\n", ok ? "all criteria passed" : "some criteria FAILED");
  return ok ? 0 : 1;
}
