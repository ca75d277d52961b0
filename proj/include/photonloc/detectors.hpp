// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "photonloc/states.hpp"

namespace photonloc {

/// A rectangular array of hyperpixels on a hyperplane. Coordinates are the
/// on-plane ones of HyperplaneGrid, relative to the plane anchor: (x1, x2, x3)
/// at fixed t, (x1, x2, t) at fixed x3. Bounds are half-open [lo, hi).
struct DetectorArraySpec {
    Hyperplane plane = Hyperplane::at_time(0.0);
    Vec3 pixel{1.0, 1.0, 1.0};
    std::array<std::array<double, 2>, 3> bounds{};

    /// Every cell of the grid, with hyperpixels of `block` cells per axis.
    static DetectorArraySpec covering(const HyperplaneGrid& grid, Index3 block = {1, 1, 1});

    Index3 pixel_counts() const;
    std::size_t pixel_total() const;
};

/// Integer cell layout of an array on a grid.
struct ArrayLayout {
    Index3 block{};       // cells per hyperpixel
    Index3 first_cell{};  // signed index of the first covered cell
    Index3 pixels{};      // hyperpixels per axis
};

/// Throws GridMismatch unless the array's plane is the grid's, bounds lie on
/// cell edges inside the grid and each hyperpixel is a whole block of cells.
ArrayLayout resolve(const DetectorArraySpec& array, const HyperplaneGrid& grid);

struct DetectionDistribution {
    Index3 pixels{};
    std::vector<double> probability;
    /// On-plane coordinates of each hyperpixel center.
    std::vector<Vec3> center;

    double total() const;
    double coverage_deficit() const { return 1.0 - total(); }
    Index3 pixel_index(std::size_t id) const;
};

/// p_j = sum of the plane's detection density over the cells of hyperpixel j
/// times Delta sigma.
DetectionDistribution detection_probabilities(const PhotonAmplitude& psi, const DetectorArraySpec& array);

/// Same, from a precomputed density on the array's grid.
DetectionDistribution integrate_density(const std::vector<double>& density, const HyperplaneGrid& grid,
                                        const DetectorArraySpec& array);

struct EventRecord {
    std::size_t pixel = 0;
    Index3 pixel_index{};
    Vec3 center{};
    std::uint64_t draw = 0;
};

/// Uniform double in [0, 1) for draw `index` of stream `seed`.
double counter_uniform(std::uint64_t seed, std::uint64_t index);

/// n categorical draws from the distribution (renormalized to its total).
/// Draw i depends only on (seed, i). Throws DomainError if the total is 0.
std::vector<EventRecord> sample_events(const DetectionDistribution& dist, std::size_t n, std::uint64_t seed);

/// max over on-plane axes of the rms spread of k over |mean k|, with the
/// flat lattice measure weighted by |psi~|^2 over on-plane modes.
double relative_bandwidth(const PhotonAmplitude& psi);

struct NaiveRatio {
    double ratio = 0.0;
    double bandwidth = 0.0;
    double naive_total = 0.0;
    double covariant_total = 0.0;
};

/// Total over the array of the density obtained with spacelike weights
/// 1/sqrt(2 omega) on a timelike plane, over the covariant counting total.
/// Throws DomainError when relative_bandwidth exceeds `max_bandwidth`.
NaiveRatio naive_vs_covariant_ratio(const PhotonAmplitude& psi, const DetectorArraySpec& array,
                                    double max_bandwidth = 0.02);

struct ObserverFrame {
    BoostParameters boost{0.0};
};

/// The array seen by a boosted observer: its plane is the boosted one, and
/// in the (x3', t') plane it is the line
///   t'  = intercept + slope x3'   (spacelike array)
///   x3' = intercept + slope t'    (timelike array)
/// at angle alpha = atan(slope) to the x3' (resp. t') axis.
struct BoostedView {
    DetectorArraySpec array;
    double intercept = 0.0;
    double slope = 0.0;
    double alpha = 0.0;
};

BoostedView boosted_view(const DetectorArraySpec& array, const ObserverFrame& frame);

/// Canonical grid of the observer frame for psi: same kind and sizes, the
/// axis-2 lattice stretched by the boost's Jacobian at the state's mean
/// wavevector, plane through the boosted anchor.
GridPtr observer_grid(const PhotonAmplitude& psi, const ObserverFrame& frame);

struct FrameComparison {
    double rest_total = 0.0;
    double boosted_total = 0.0;
    double rest_norm = 0.0;
    double boosted_norm = 0.0;
    /// max of the relative total and norm deviations.
    double deviation = 0.0;
};

/// Polarization-summed total detection probability and norm in the rest
/// frame and in the observer frame (state resampled onto observer_grid).
/// The array must cover the whole grid.
FrameComparison frame_invariance_check(const PhotonAmplitude& psi, const DetectorArraySpec& array,
                                       const ObserverFrame& frame);

} // namespace photonloc
