#pragma once

#include <cstddef>
#include <functional>

namespace cityres {

/// Worker count: CITYRES_THREADS if set to a positive integer, otherwise the
/// number of hardware threads.
std::size_t thread_count();

/// Calls body(i) for i in [begin, end) on up to thread_count() threads.
/// Rethrows the first exception raised by any call. Nested calls from inside
/// a worker run serially.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace cityres
