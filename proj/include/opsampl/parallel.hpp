#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace opsampl {

// Worker count: min(hardware_concurrency, OPSAMPL_THREADS if set).
inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("OPSAMPL_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
  }
  return hw;
}

// Splits [0, total) into contiguous chunks and runs body(chunk_index, begin, end)
// on a small thread pool.  Callers own determinism: accumulate per chunk and
// merge by chunk index afterwards.
inline void parallel_chunks(std::uint64_t total,
                            const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
  if (total == 0) return;
  unsigned workers = worker_count();
  if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<unsigned>(total);
  if (workers <= 1) {
    body(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t per = total / workers;
  const std::uint64_t rem = total % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t len = per + (w < rem ? 1 : 0);
    std::uint64_t end = begin + len;
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
    begin = end;
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace opsampl
