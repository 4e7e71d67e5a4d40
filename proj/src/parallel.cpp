#include "exotic/parallel.hpp"

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace exotic {

namespace {

std::size_t default_workers() {
  if (const char* env = std::getenv("EXOTIC_THREADS")) {
    try {
      auto n = std::stoul(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct ArenaState {
  std::mutex mutex;
  std::size_t workers = default_workers();
  std::unique_ptr<tbb::global_control> limit;
  std::unique_ptr<tbb::task_arena> arena;
};

ArenaState& state() {
  static ArenaState s;
  return s;
}

tbb::task_arena& arena() {
  auto& s = state();
  std::lock_guard lock(s.mutex);
  if (!s.arena) {
    // the default soft limit is hardware concurrency; honour larger explicit requests
    s.limit = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism, s.workers);
    s.arena = std::make_unique<tbb::task_arena>(static_cast<int>(s.workers));
  }
  return *s.arena;
}

}  // namespace

void set_worker_count(std::size_t workers) {
  auto& s = state();
  std::lock_guard lock(s.mutex);
  s.workers = std::max<std::size_t>(1, workers);
  s.arena.reset();
  s.limit.reset();
}

std::size_t worker_count() {
  auto& s = state();
  std::lock_guard lock(s.mutex);
  return s.workers;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body, std::size_t chunk) {
  if (n == 0) return;
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  if (chunks == 1 || worker_count() == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  arena().execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, chunks, 1), [&](const tbb::blocked_range<std::size_t>& r) {
      for (std::size_t c = r.begin(); c != r.end(); ++c) body(c * chunk, std::min(n, (c + 1) * chunk));
    });
  });
}

}  // namespace exotic
