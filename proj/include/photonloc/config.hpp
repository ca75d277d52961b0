// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "photonloc/states.hpp"

namespace photonloc {

/// Value of one key in the flat TOML subset: string, number, boolean or a
/// list of numbers.
using ConfigValue = std::variant<std::string, double, bool, std::vector<double>>;

struct ConfigEntry {
    ConfigValue value;
    int line = 0;
};

/// Parsed "section.key" -> value. Top-level keys have no section prefix.
using ConfigTable = std::map<std::string, ConfigEntry>;

/// Throws ConfigError naming the line on syntax errors or repeated keys.
ConfigTable parse_config(const std::string& text);

enum class Scenario { density, count, boost, costheta, tail, validate };

const char* to_string(Scenario s);
/// Throws ConfigError("scenario", ...) for unknown names.
Scenario parse_scenario(const std::string& name);

struct GridConfig {
    Index3 sizes{32, 32, 32};
    Vec3 spacings{0.8, 0.8, 0.8};
    Vec3 k_center{0.0, 0.0, 3.0};
};

struct PlaneConfig {
    PlaneKind kind = PlaneKind::spacelike;
    double offset = 0.0;
};

struct ArrayConfig {
    std::optional<Vec3> pixel;
    std::optional<Vec3> lower;
    std::optional<Vec3> upper;
};

struct CosThetaConfig {
    double theta_deg = 45.0;
    double omega = 10.0;
    double bandwidth = 0.01;
    int size = 32;
};

struct TailConfig {
    std::vector<int> sizes{32, 64};
    double spacing = 1.0;
    double fit_min = 2.0;
    double fit_max = 10.0;
};

struct RunConfig {
    std::optional<Scenario> scenario;
    std::uint64_t seed = 1;
    int threads = 1;
    GridConfig grid;
    PlaneConfig plane;
    PacketSpec packet;
    ArrayConfig array;
    double beta = 0.6;
    std::size_t events = 100000;
    CosThetaConfig costheta;
    TailConfig tail;
};

/// Builds a RunConfig from parsed keys. Unknown keys, wrong types and values
/// outside their domain (|beta| >= 1, odd grid sizes, ...) raise ConfigError
/// naming "section.key" and the line.
RunConfig load_run_config(const ConfigTable& table);
RunConfig load_run_config_file(const std::string& path);

} // namespace photonloc
