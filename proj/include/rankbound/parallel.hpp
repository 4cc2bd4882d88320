#pragma once

#include <functional>

namespace rankbound {

/// Worker threads to use: the RANKBOUND_THREADS environment variable when it
/// parses to a positive integer, otherwise the hardware concurrency.
int worker_count();

/// Runs body(0..n-1) across worker_count() threads. The assignment of
/// indices to threads is unspecified, so callers must keep iterations
/// independent and merge results in index order afterwards; every numeric
/// outcome then stays independent of the thread count. The first exception
/// thrown by any iteration is rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace rankbound
