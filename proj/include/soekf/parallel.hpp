#pragma once

#include <cstdint>
#include <functional>

namespace soekf {

// Number of worker threads for `task_count` independent tasks. Respects the
// SOEKF_THREADS environment variable, otherwise hardware concurrency.
int thread_budget(std::int64_t task_count);

// Runs body(0..count-1) on up to thread_budget(count) threads. The caller is
// responsible for writing results into per-index slots so that the outcome
// does not depend on the thread count. Nested calls run serially.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& body);

}  // namespace soekf
