// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "photonloc/detectors.hpp"
#include "photonloc/flux.hpp"
#include "photonloc/localization.hpp"

namespace photonloc::io {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);

/// Columns k1,k2,k3_or_k0,lambda,epsilon,re,im; re/im are the stored reduced
/// amplitude. Rows for zero entries are omitted.
void write_amplitude_csv(std::ostream& os, const PhotonAmplitude& psi);

/// Reads rows written by write_amplitude_csv back onto `grid` (bit-exact).
/// Throws ConfigError on malformed rows or wavevectors off the lattice.
PhotonAmplitude read_amplitude_csv(std::istream& is, GridPtr grid, Vec3 polarization_axis, double cutoff);

/// x1,x2,x3_or_t,lambda,epsilon,re,im per grid point and channel (on-plane
/// coordinates relative to the plane anchor).
void write_projection_csv(std::ostream& os, const ProjectionField& field);

/// x1,x2,x3_or_t,density per grid point.
void write_density_csv(std::ostream& os, const HyperplaneGrid& grid, const std::vector<double>& density);

/// t,x1,x2,x3,epsilon,J0,J1,J2,J3 (real parts).
void write_flux_csv(std::ostream& os, std::span<const FourVector> events, const std::vector<FluxSample>& flux);

/// pixel_i1,pixel_i2,pixel_i3,center_coord1..3,probability.
void write_distribution_csv(std::ostream& os, const DetectionDistribution& dist);

/// One JSON object per line: {"pixel":[i1,i2,i3],"center":[c1,c2,c3],"draw":n}.
void write_events_jsonl(std::ostream& os, const std::vector<EventRecord>& events);

} // namespace photonloc::io
