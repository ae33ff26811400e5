#pragma once

#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace selmerlab {

// Worker count from SELMERLAB_WORKERS, falling back to 1.
unsigned workers_from_env();

// Clamp a requested worker count to [1, 256]; 0 means "ask the environment".
unsigned resolve_workers(unsigned requested);

struct IndexRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

// Split [0, total) into `parts` contiguous ranges of near-equal size.
std::vector<IndexRange> split_range(std::uint64_t total, unsigned parts);

// Runs body(range, part_index) for each part. The partition only depends on
// `parts`, never on scheduling, so callers that merge partial results in part
// order get results independent of the worker count they chose.
template <class Body>
void run_partitioned(std::uint64_t total, unsigned parts, unsigned workers, Body&& body) {
  const auto ranges = split_range(total, parts);
  if (workers <= 1 || ranges.size() <= 1) {
    for (std::size_t i = 0; i < ranges.size(); ++i) body(ranges[i], i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t nthreads = workers < ranges.size() ? workers : ranges.size();
  pool.reserve(nthreads);
  for (std::size_t w = 0; w < nthreads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < ranges.size(); i += nthreads) body(ranges[i], i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace selmerlab
