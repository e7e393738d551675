#pragma once

#include <cstddef>
#include <functional>

namespace hamrg {

// Runs body(i) for i in [0, count) on up to `jobs` threads. Work items are
// handed out dynamically; the caller stores results by index. The first
// exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& body);

// Number of hardware threads, at least 1.
int hardware_jobs();

}  // namespace hamrg
