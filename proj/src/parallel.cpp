// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace photonloc {

namespace {
std::atomic<int> workers{1};
}

void set_thread_count(int n) { workers = std::max(1, n); }

int thread_count() { return workers; }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body)
{
    const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(workers.load()), n);
    if (t <= 1) {
        if (n > 0)
            body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    const std::size_t chunk = (n + t - 1) / t;
    for (std::size_t w = 0; w < t; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e)
            break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace photonloc
