#pragma once

#include <cstddef>
#include <functional>

namespace exotic {

/// Elements per work chunk. Chunk boundaries depend only on the problem size, never on
/// the worker count, so chunked reductions combine partials in the same order every run.
inline constexpr std::size_t kChunkSize = std::size_t{1} << 14;

/// Worker count defaults to EXOTIC_THREADS, else the hardware concurrency.
void set_worker_count(std::size_t workers);
std::size_t worker_count();

/// Calls body(begin, end) for every chunk of [0, n), possibly concurrently.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                     std::size_t chunk = kChunkSize);

}  // namespace exotic
