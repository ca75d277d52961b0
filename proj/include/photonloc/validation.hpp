// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "photonloc/detectors.hpp"

namespace photonloc {

/// Reference setups shared by the validation suite and the CLI. Grids keep
/// the box fixed (25.6 wide) so that n = 32 -> 64 refines the spacing.
GridPtr reference_spacelike_grid(int n, double t = 0.0);
PacketSpec reference_spacelike_packet();
GridPtr reference_timelike_grid(int n, double b = 0.0);
PacketSpec reference_timelike_packet();

/// Narrowband packet on an x3 = 0 grid whose mean wavevector makes angle
/// theta with x3: on-plane center (omega sin theta, 0, omega), widths
/// bandwidth * omega.
struct CosThetaSetup {
    GridPtr grid;
    PacketSpec packet;
};
CosThetaSetup costheta_setup(double theta_rad, double omega, double bandwidth, int n);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::pair<std::string, double>> measured;
    std::string note;
};

CriterionResult check_orthogonality(std::uint64_t seed);
CriterionResult check_completeness(std::uint64_t seed);
CriterionResult check_flux_equivalence(std::uint64_t seed);
CriterionResult check_certainty();
CriterionResult check_wrong_basis();
CriterionResult check_boost_geometry();
CriterionResult check_frame_invariance();
CriterionResult check_non_localization();
CriterionResult check_evanescent_transport();
CriterionResult check_kg_oracle(std::uint64_t seed);
CriterionResult check_monte_carlo(std::uint64_t seed);

/// All criteria in order; `on_result` (if set) sees each as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [3] name: key=value ..." on one line.
std::string summary_line(const CriterionResult& r);

} // namespace photonloc
