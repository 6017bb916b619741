#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace semiaffine {

/// 0 means "all hardware threads".
unsigned resolve_workers(unsigned requested);

/// Runs body(i) for every i in [0, count) on up to `workers` threads. Each index
/// is handled exactly once, so bodies that write only their own output slot
/// give results independent of the worker count. The first exception thrown
/// by any body is rethrown on the caller.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace semiaffine
