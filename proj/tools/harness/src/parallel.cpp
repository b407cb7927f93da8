#include "harness/parallel.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace harness {

void parallel_reps(long long reps, int threads,
                   const std::function<void(long long, int)>& body) {
  if (reps < 0) throw std::invalid_argument("parallel_reps: negative count");
  if (threads < 1) throw std::invalid_argument("parallel_reps: need a worker");
  if (reps == 0) return;

  const int workers =
      static_cast<int>(std::min<long long>(threads, reps));
  if (workers == 1) {
    for (long long rep = 0; rep < reps; ++rep) body(rep, 0);
    return;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const long long lo = reps * w / workers;
    const long long hi = reps * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (long long rep = lo; rep < hi; ++rep) body(rep, w);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace harness
