#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace cubesaw {

/// Worker count used by the enumerators. Defaults to hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs task(i) for i in [0, n) on up to thread_count() workers. Tasks are
/// dealt round-robin; callers write results into per-index slots and reduce
/// in index order, so output never depends on the worker count. The first
/// exception thrown by any task is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace cubesaw
