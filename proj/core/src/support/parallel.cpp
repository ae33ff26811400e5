#include "selmerlab/support/parallel.hpp"

#include <cstdlib>
#include <string>

namespace selmerlab {

unsigned workers_from_env() {
  const char* raw = std::getenv("SELMERLAB_WORKERS");
  if (raw == nullptr || *raw == '\0') return 1;
  try {
    const long v = std::stol(raw);
    return v < 1 ? 1u : static_cast<unsigned>(v);
  } catch (...) {
    return 1;
  }
}

unsigned resolve_workers(unsigned requested) {
  unsigned w = requested == 0 ? workers_from_env() : requested;
  if (w < 1) w = 1;
  if (w > 256) w = 256;
  return w;
}

std::vector<IndexRange> split_range(std::uint64_t total, unsigned parts) {
  if (parts == 0) parts = 1;
  std::vector<IndexRange> out;
  if (total == 0) return out;
  if (parts > total) parts = static_cast<unsigned>(total);
  out.reserve(parts);
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;
  std::uint64_t at = 0;
  for (unsigned i = 0; i < parts; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out.push_back({at, at + len});
    at += len;
  }
  return out;
}

}  // namespace selmerlab
