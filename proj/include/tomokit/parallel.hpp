#ifndef TOMOKIT_PARALLEL_HPP
#define TOMOKIT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace tomokit {

// Process-wide worker-thread budget (1 = serial).  The CLI sets this from
// --threads / TOMOKIT_THREADS.  All parallel loops split work into
// contiguous chunks whose per-item results are independent, so outputs are
// bit-identical for any thread count.
void set_max_threads(int n);
int max_threads();

// Runs body(begin, end) over a partition of [0, total).  Exceptions from
// workers are rethrown on the calling thread.
void parallel_chunks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace tomokit

#endif
