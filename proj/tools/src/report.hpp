#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "selmerlab/support/bigint.hpp"

namespace selmerlab::cli {

using nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitCap = 2;
inline constexpr int kExitConfig = 3;

inline constexpr std::string_view kSchemaVersion = "1";

// Collects a report body and writes it after a single header line that holds
// everything run-dependent (timestamp, wall clock, worker count).
class Report {
 public:
  Report(std::string command, unsigned workers);

  ordered_json& body() { return body_; }
  void set_seed(std::optional<std::uint64_t> seed);
  void verdict(const std::string& name, bool ok);
  bool passed() const { return passed_; }

  // JSON report; returns the exit code implied by the verdicts.
  int write_json(const std::string& path) const;
  // CSV report with the same header line.
  int write_text(const std::string& path, const std::string& text) const;

 private:
  std::string header() const;

  std::string command_;
  unsigned workers_;
  std::chrono::steady_clock::time_point start_;
  ordered_json body_;
  bool passed_ = true;
};

std::string str(const BigInt& v);
std::string str(const Rational& v);

}  // namespace selmerlab::cli
