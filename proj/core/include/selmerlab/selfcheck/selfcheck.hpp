#pragma once

// Runs the project's acceptance criteria against the library and reports one
// verdict per criterion. Shared by the CLI and the acceptance test binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace selmerlab::selfcheck {

struct Options {
  bool quick = false;     // skip the criteria marked heavy
  unsigned workers = 1;
  std::uint64_t seed = 20240611;
};

struct Result {
  unsigned id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;  // deterministic given the options
  double seconds = 0;
};

struct Criterion {
  unsigned id = 0;
  std::string name;
  bool heavy = false;
  std::function<Result(const Options&)> run;
};

const std::vector<Criterion>& criteria();

// Runs every criterion (or the quick subset) in order; `on_result` sees each
// verdict as soon as it is available. Exceptions inside a criterion count as
// a failure with the message in `detail`.
std::vector<Result> run(const Options& options, const std::function<void(const Result&)>& on_result = {});

bool all_passed(const std::vector<Result>& results);

}  // namespace selmerlab::selfcheck
