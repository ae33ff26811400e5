#pragma once

#include <cstdint>
#include <string>

namespace selmerlab::cli {

struct Common {
  unsigned workers = 1;
  std::string out = "-";
};

int census(const Common& c, unsigned n, std::uint64_t q, std::uint64_t cap, const std::string& csv_path);
int density_alpha(const Common& c, unsigned n, std::uint64_t q);
int density_beta(const Common& c, unsigned n, std::uint64_t q, std::uint64_t samples, std::uint64_t seed);
int density_minimality(const Common& c, unsigned n, std::uint64_t q, std::int64_t d, std::uint64_t samples,
                       std::uint64_t seed);
int density_semistable(const Common& c, unsigned n, std::uint64_t q);
int density_sqfree(const Common& c, unsigned n, std::uint64_t q, std::int64_t d, std::uint64_t samples,
                   std::uint64_t seed);
int constants(const Common& c, unsigned n, std::uint64_t q, unsigned truncation);
int table1(const Common& c, unsigned n, std::int64_t f_max, std::int64_t d_max);
int reduce(const Common& c, unsigned n, std::uint64_t q, unsigned trials, std::uint64_t seed);
int j2(const Common& c, std::uint64_t q, const std::string& poly);
int minmodel(const Common& c, unsigned n, std::uint64_t q, const std::string& sections);
int selfcheck(const Common& c, bool quick, std::uint64_t seed);

}  // namespace selmerlab::cli
