// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <vector>

#include "photonloc/states.hpp"

namespace photonloc {

/// Parameters (x', lambda', eps') of a localized state on a hyperplane.
struct LocalizedStateSpec {
    FourVector position;
    Channel channel;
};

/// Reduced amplitude exp(-i k x') / (2 pi)^{3/2} on channel (lambda', eps'),
/// i.e. psi = sqrt(2|k_Sigma|) exp(-i k x') / (2 pi)^{3/2}. Zero on every
/// other channel and, on timelike planes, on evanescent modes.
/// Throws DomainError if x' is off the grid's plane.
PhotonAmplitude localized_amplitude(const LocalizedStateSpec& spec, GridPtr grid);

/// <chi_a|chi_b>. On a spacelike grid this is the discrete
/// delta_{lambda lambda'} delta_{eps eps'} delta(x - x') with the delta realized as
/// Kronecker / Delta sigma.
cplx overlap(const LocalizedStateSpec& a, const LocalizedStateSpec& b, GridPtr grid);

/// <chi_{x,lambda,eps}|psi> at every grid event x, per channel.
struct ProjectionField {
    GridPtr grid;
    std::array<std::vector<cplx>, kChannels> values;

    std::span<const cplx> channel(Channel ch) const { return values[static_cast<std::size_t>(ch.index())]; }
};

/// Fast path: one 3D FFT of Delta kappa psi~ / (2 pi)^{3/2} per channel.
ProjectionField project_all(const PhotonAmplitude& psi);
/// Direct summation of the same projection (O(N^2)), used as a cross-check.
ProjectionField project_all_direct(const PhotonAmplitude& psi);

/// Sum over channels of |<chi_x|psi>|^2 on a t = a grid. Throws PlaneKindError
/// on timelike grids.
std::vector<double> spacelike_density(const PhotonAmplitude& psi);

/// Counting density over (x1, x2, t) on an x3 = b grid. Throws PlaneKindError
/// on spacelike grids and SupportViolation when evanescent modes carry more
/// than 1e-10 of the state's weight.
std::vector<double> timelike_counting(const PhotonAmplitude& psi);

/// Either of the two above, chosen by plane kind.
std::vector<double> detection_density(const PhotonAmplitude& psi);

/// |sum_{lambda,eps} sum_x Delta sigma <phi|chi><chi|psi> - <phi|psi>| / |<phi|psi>|,
/// or the absolute defect when <phi|psi> = 0.
double completeness_defect(const PhotonAmplitude& phi, const PhotonAmplitude& psi);

/// Four-potential of a localized state at arbitrary events (direct sum):
///   chi^mu(x) = sum_modes [dk / sqrt(2|k_Sigma|)] e^mu_lambda'(k) exp(ik(x - x')) / (2 pi)^3.
std::vector<std::array<cplx, 4>> potential_of_localized(const LocalizedStateSpec& spec, GridPtr grid,
                                                        std::span<const FourVector> events);

/// The same field at every grid event via FFT.
std::vector<std::array<cplx, 4>> potential_of_localized_on_grid(const LocalizedStateSpec& spec, GridPtr grid);

/// Shell-averaged |chi| (Euclidean norm over mu) versus on-plane distance
/// from the plane anchor, binned to whole cells.
struct RadialProfile {
    std::vector<double> radius;
    std::vector<double> magnitude;
    double peak = 0.0;
};

RadialProfile radial_profile(const HyperplaneGrid& grid, const std::vector<std::array<cplx, 4>>& field);

/// Least-squares slope of log(magnitude) against log(radius) over
/// r in [r_min, r_max].
double loglog_slope(const RadialProfile& profile, double r_min, double r_max);

/// <chi_{x,lambda,eps}|psi> at an arbitrary event x for a state on an x3 = b
/// grid, evanescent modes included through exp(i k3 (x3 - b)).
/// Throws DomainError if any populated evanescent mode would grow toward x.
cplx plane_to_plane_amplitude(const PhotonAmplitude& psi, Channel ch, const FourVector& to_point);

/// The state re-anchored on the parallel plane x3 = b + delta.
/// Same growth check as plane_to_plane_amplitude.
PhotonAmplitude transport(const PhotonAmplitude& psi, double delta);

} // namespace photonloc
