// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "photonloc/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "photonloc/error.hpp"

namespace photonloc::fft {

namespace {
// The FFTW planner is not reentrant; execution is.
std::mutex planner_mutex;
} // namespace

void transform3d(std::span<cplx> data, const Index3& n, int sign)
{
    if (data.size() != static_cast<std::size_t>(n[0]) * n[1] * n[2])
        throw DomainError("fft: buffer size does not match grid sizes");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_3d(n[0], n[1], n[2], buf, buf, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
}

} // namespace photonloc::fft
