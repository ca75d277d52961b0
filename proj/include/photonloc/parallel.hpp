// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace photonloc {

/// Worker count for data-parallel loops (default 1). Results never depend on
/// it: loops split independent items and reductions run in a fixed order.
void set_thread_count(int n);
int thread_count();

/// Calls body(begin, end) on contiguous chunks of [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace photonloc
