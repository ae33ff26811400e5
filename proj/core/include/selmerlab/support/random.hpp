#pragma once

#include <cstdint>
#include <random>

namespace selmerlab {

// Monte Carlo samples are drawn in fixed-size blocks. Block b always uses the
// stream derived from (seed, b), whichever worker happens to run it.
inline constexpr std::uint64_t kSampleBlock = 8192;

using SampleEngine = std::mt19937_64;

SampleEngine block_engine(std::uint64_t seed, std::uint64_t block);

}  // namespace selmerlab
