// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace slgate {

// Worker count: SLGATE_THREADS if set (clamped to >= 1), else hardware
// concurrency.
int max_threads();

// Runs fn(i) for i in [0, n). Each index owns its output slot, so results
// are identical to the serial loop regardless of the worker count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace slgate
