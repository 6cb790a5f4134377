#pragma once

#include <cstddef>
#include <functional>

namespace bqmaxwell {

/// Worker count used by the module-internal loops (default 1).
void set_thread_count(int threads);
int thread_count();

/// Runs body(begin, end) over disjoint chunks of [0, count).  Every index is
/// visited exactly once, so results do not depend on the thread count as long
/// as body writes only to its own indices.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace bqmaxwell
