#include "soekf/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace soekf {

namespace {

thread_local bool g_inside_parallel = false;

int env_thread_cap() {
  const char* raw = std::getenv("SOEKF_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || v < 1) return 0;
  return static_cast<int>(std::min(v, 64L));
}

}  // namespace

int thread_budget(std::int64_t task_count) {
  if (task_count <= 1 || g_inside_parallel) return 1;
  int threads = env_thread_cap();
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads == 0) threads = 1;
  }
  return static_cast<int>(
      std::min<std::int64_t>(threads, task_count));
}

void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& body) {
  const int threads = thread_budget(count);
  if (threads <= 1) {
    const bool was_inside = g_inside_parallel;
    g_inside_parallel = true;
    for (std::int64_t i = 0; i < count; ++i) body(i);
    g_inside_parallel = was_inside;
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      g_inside_parallel = true;
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace soekf
