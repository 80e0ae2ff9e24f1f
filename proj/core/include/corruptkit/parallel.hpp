#pragma once

#include <cstddef>
#include <functional>

namespace corruptkit {

/// Logical core count, honoring the CORRUPTKIT_JOBS environment variable
/// when it holds a positive integer.
int default_worker_count();

/// Runs body(i) for every i in [0, count) on `workers` threads that pull
/// indices from a shared atomic counter. The first exception thrown by any
/// task is rethrown after all workers join; remaining tasks still run.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace corruptkit
