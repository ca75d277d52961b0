// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "photonloc/kspace.hpp"

namespace photonloc {

/// Plane-wave synthesis F(x) = sum_m c_m exp(i k_m x) over the lattice of one
/// flux sign, kx the metric contraction.
///
/// synthesize_on_plane evaluates F at every grid event with one 3D FFT;
/// synthesize_at is the O(modes) direct sum at an arbitrary event. Both
/// handle evanescent modes through the complex k^3 of the plane anchor term.
std::vector<cplx> synthesize_on_plane(const HyperplaneGrid& grid, FluxSign eps, std::vector<cplx> coeffs);

cplx synthesize_at(const HyperplaneGrid& grid, FluxSign eps, std::span<const cplx> coeffs, const FourVector& x);

/// Direct-sum counterpart of synthesize_on_plane (O(N^2)); runs on the
/// thread pool.
std::vector<cplx> synthesize_on_plane_direct(const HyperplaneGrid& grid, FluxSign eps, std::span<const cplx> coeffs);

/// exp(i contract(k_m, anchor)) for every lattice point of one flux sign.
std::vector<cplx> anchor_phases(const HyperplaneGrid& grid, FluxSign eps);

} // namespace photonloc
