#include "selmerlab/support/random.hpp"

namespace selmerlab {

SampleEngine block_engine(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), 0x53u};
  return SampleEngine(seq);
}

}  // namespace selmerlab
