// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "photonloc/config.hpp"
#include "photonloc/validation.hpp"

namespace photonloc {

enum ExitCode { kExitOk = 0, kExitNumerical = 1, kExitConfig = 2 };

struct RunOutcome {
    int exit_code = kExitOk;
    nlohmann::ordered_json report;
};

/// Runs one scenario and writes its artifacts plus report.json into `out_dir`.
/// Configuration problems surface as ConfigError; invariant breaches give
/// kExitNumerical.
RunOutcome run(Scenario scenario, const RunConfig& config, const std::filesystem::path& out_dir);

/// Machine-readable pass/fail per criterion with measured values.
nlohmann::ordered_json emit_report(const std::vector<CriterionResult>& results);

} // namespace photonloc
