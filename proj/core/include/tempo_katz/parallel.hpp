#pragma once

#include <cstddef>
#include <functional>

namespace tempo_katz {

/// Worker cap from TEMPO_KATZ_THREADS; 0 or unset means hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads. Each
/// index is visited exactly once; callers write to disjoint slots, so results
/// do not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tempo_katz
