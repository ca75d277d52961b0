// Copyright 2026 The photonloc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "photonloc/error.hpp"
#include "photonloc/run.hpp"

int main(int argc, char** argv)
{
    using namespace photonloc;
    CLI::App app{"One-photon localization on spacelike and timelike hyperplanes"};
    std::string scenario_name, config_path, out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    app.add_option("scenario", scenario_name, "density|count|boost|costheta|tail|validate")->required();
    app.add_option("--config", config_path, "run configuration (TOML subset)")->required();
    app.add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt = app.add_option("--seed", seed, "overrides the config seed");
    auto* threads_opt = app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const Scenario scenario = parse_scenario(scenario_name);
        RunConfig config = load_run_config_file(config_path);
        if (config.scenario && *config.scenario != scenario)
            throw ConfigError("scenario", std::string("scenario: config is for '") + to_string(*config.scenario) +
                                              "', command line asks for '" + scenario_name + "'");
        if (seed_opt->count())
            config.seed = seed;
        if (threads_opt->count())
            config.threads = threads;
        const RunOutcome outcome = run(scenario, config, out_dir);
        std::cout << outcome.report.dump(2) << '\n';
        return outcome.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error [" << e.field() << "]: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
