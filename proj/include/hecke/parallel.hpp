#pragma once

#include <cstddef>
#include <functional>

namespace hecke {

/// Worker count from HECKE_SL2_THREADS (unset or 0 means hardware concurrency).
unsigned thread_count();

/// Calls body(i) for 0 <= i < n on thread_count() threads. Each index is
/// handled exactly once; results must be written to per-index slots so the
/// outcome does not depend on the schedule. The first exception thrown by
/// any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace hecke
