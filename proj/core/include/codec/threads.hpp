#ifndef CODEC_THREADS_HPP
#define CODEC_THREADS_HPP

#include <cstddef>
#include <functional>

namespace codec {

/// Worker count for a pool of `task_count` tasks: hardware concurrency,
/// capped by the CODEC_THREADS environment variable when set.
std::size_t worker_count(std::size_t task_count);

/// Runs fn(0) .. fn(count - 1) on a small worker pool. Tasks must write
/// results into per-index slots; completion order is unspecified but the
/// caller sees all effects once this returns. Exceptions are rethrown.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace codec

#endif  // CODEC_THREADS_HPP
