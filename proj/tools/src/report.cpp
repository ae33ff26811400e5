#include "report.hpp"

#include <ctime>
#include <fstream>
#include <iostream>

#include <fmt/format.h>

#include "selmerlab/support/errors.hpp"
#include "selmerlab/support/version.hpp"

namespace selmerlab::cli {

Report::Report(std::string command, unsigned workers)
    : command_(std::move(command)), workers_(workers), start_(std::chrono::steady_clock::now()) {
  body_["schema"] = kSchemaVersion;
  body_["command"] = command_;
  body_["version"] = std::string(selmerlab::version());
  body_["seed"] = nullptr;
  body_["config"] = ordered_json::object();
  body_["verdicts"] = ordered_json::object();
}

void Report::set_seed(std::optional<std::uint64_t> seed) {
  if (seed)
    body_["seed"] = *seed;
  else
    body_["seed"] = nullptr;
}

void Report::verdict(const std::string& name, bool ok) {
  body_["verdicts"][name] = ok;
  passed_ = passed_ && ok;
}

std::string Report::header() const {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return fmt::format("# selmerlab {} {} generated={} wall_clock={:.3f}s workers={}\n", selmerlab::version(), command_,
                     stamp, wall, workers_);
}

namespace {

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file " + path);
  out << text;
}

}  // namespace

int Report::write_json(const std::string& path) const {
  write_out(path, header() + body_.dump(2) + "\n");
  return passed_ ? kExitOk : kExitAssertion;
}

int Report::write_text(const std::string& path, const std::string& text) const {
  write_out(path, header() + text);
  return passed_ ? kExitOk : kExitAssertion;
}

std::string str(const BigInt& v) { return v.str(); }

std::string str(const Rational& v) {
  return denominator(v) == 1 ? numerator(v).str() : numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace selmerlab::cli
