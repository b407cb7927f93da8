#pragma once

#include <functional>

namespace harness {

/** Runs body(rep, worker) for every rep in [0, reps) across `threads`
 *  workers on contiguous blocks. Replication outputs must depend only on
 *  rep (each replication seeds its own RNG stream), and aggregation must be
 *  either per-rep slot writes or worker-local integer counting merged after
 *  the join — both make the final output independent of the thread count.
 *  Exceptions thrown by any worker are rethrown on the calling thread. */
void parallel_reps(long long reps, int threads,
                   const std::function<void(long long, int)>& body);

}  // namespace harness
