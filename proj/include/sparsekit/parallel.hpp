#pragma once

#include <cstddef>
#include <functional>

namespace sparsekit {

// Worker count used by parallel_for; 1 means run inline.
void set_threads(int n);
int threads();

// Calls fn(i) for i in [0,count). Each index must write only its own output
// slot; callers reduce afterwards in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace sparsekit
