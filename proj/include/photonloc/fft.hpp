// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "photonloc/kspace.hpp"

namespace photonloc::fft {

/// In-place unnormalized 3D DFT over a row-major N0 x N1 x N2 array:
/// out[q] = sum_p in[p] exp(sign * 2 pi i p.q / N), sign = +1 or -1.
void transform3d(std::span<cplx> data, const Index3& sizes, int sign);

} // namespace photonloc::fft
