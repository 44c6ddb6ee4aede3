// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace nlk {

/// Worker count for parallel_for. Defaults to NONLOCAL_KIT_THREADS, then 1.
int thread_count();
/// Overrides the worker count; values below 1 restore the default.
void set_thread_count(int threads);

/// Runs body(i) for i in [0, count). Each index must write only its own
/// output slot, which keeps results independent of the worker count.
/// Nested calls run serially on the calling worker. The first exception
/// thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nlk
