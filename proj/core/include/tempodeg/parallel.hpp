#pragma once

#include <cstddef>
#include <functional>

namespace tempodeg {

/// Frame-level fork/join parallelism. Work items are claimed dynamically but
/// each item writes only its own output, so results never depend on the
/// thread count or scheduling.
class Executor {
 public:
  /// threads == 0 selects std::thread::hardware_concurrency().
  explicit Executor(unsigned threads = 1);

  unsigned threads() const { return threads_; }

  /// Calls fn(i) for every i in [0, n). Rethrows the first exception raised
  /// by any item after all workers have joined.
  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) const;

 private:
  unsigned threads_;
};

/// Single-threaded executor used when callers pass none.
const Executor& sequential();

}  // namespace tempodeg
