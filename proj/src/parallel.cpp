#include "varsel/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "varsel/errors.hpp"

namespace varsel {

void parallel_for(int n_items, int threads,
                  const std::function<void(int)>& fn) {
  if (threads < 1) throw ConfigError("parallel_for: threads must be >= 1");
  if (n_items <= 0) return;
  const int workers = std::min(threads, n_items);
  if (workers == 1) {
    for (int i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1))
          fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_items);  // stop handing out work
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace varsel
