#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sncay {

// Runs fn(job) for job = 0..count-1 on up to `workers` threads.  Jobs are
// claimed dynamically, so unevenly sized jobs balance; any output must go
// into per-job slots, which keeps results independent of the worker count
// and of the scheduling.  The first exception thrown by a job is rethrown.
template <typename Fn>
void for_each_job(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = 1;
  if (count == 0) return;
  if (workers == 1 || count == 1) {
    for (std::size_t job = 0; job < count; ++job) fn(job);
    return;
  }
  const unsigned lanes =
      static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(lanes);
  std::vector<std::thread> threads;
  threads.reserve(lanes);
  for (unsigned lane = 0; lane < lanes; ++lane) {
    threads.emplace_back([&, lane] {
      try {
        for (std::size_t job = next.fetch_add(1); job < count;
             job = next.fetch_add(1))
          fn(job);
      } catch (...) {
        errors[lane] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

inline unsigned hardware_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace sncay
