#include "shiftwave/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace shiftwave {
namespace {
std::atomic<unsigned> thread_cap{std::max(1u, std::thread::hardware_concurrency())};
}

void set_max_threads(unsigned n) { thread_cap = std::max(1u, n); }
unsigned max_threads() { return thread_cap; }

void configure_threads_from_env() {
  const char* env = std::getenv("SHIFTWAVE_THREADS");
  if (!env || !*env) return;
  try {
    long v = std::stol(env);
    if (v >= 1) set_max_threads(static_cast<unsigned>(v));
  } catch (const std::exception&) {
  }
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(max_threads(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace shiftwave
