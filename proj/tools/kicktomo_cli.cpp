// Copyright 2026 The kicktomo Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// kicktomo command-line front end: `run` executes one experiment,
// `validate` checks a config file and prints its canonical form.

#include <iostream>

#include <CLI11.hpp>

#include "kicktomo/experiments.hpp"
#include "kicktomo/kernels.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct RunArgs {
    std::string experiment;
    std::string config;
    std::optional<kicktomo::Seed> seed;
    std::vector<double> lambdas;
    std::string out;
    std::vector<std::string> overrides;
};

kicktomo::ExperimentConfig build_config(const RunArgs &a) {
    kicktomo::ExperimentConfig cfg =
        a.config.empty() ? kicktomo::ExperimentConfig{} : kicktomo::parse_config_file(a.config);
    if (!a.experiment.empty())
        cfg.experiment = kicktomo::parse_experiment_kind(a.experiment);
    if (a.seed)
        cfg.seed = *a.seed;
    if (!a.lambdas.empty())
        cfg.lambda_list = a.lambdas;
    if (!a.out.empty())
        cfg.output_dir = a.out;
    for (const auto &kv : a.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw kicktomo::ConfigError("--set", "expected key=value, got '" + kv + "'");
        kicktomo::apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    kicktomo::validate_config(cfg);
    return cfg;
}

int do_run(const RunArgs &a) {
    const kicktomo::ExperimentConfig cfg = build_config(a);
    std::cerr << "running " << kicktomo::experiment_name(cfg.experiment) << " (config " << kicktomo::config_hash(cfg)
              << ", " << kicktomo::omp::max_threads() << " threads)\n";
    const kicktomo::RunManifest m = kicktomo::run(cfg);
    for (const auto &p : m.outputs)
        std::cout << p.string() << '\n';
    std::cout << m.manifest_path.string() << '\n';
    std::cerr << "done in " << m.wall_seconds << " s\n";
    return 0;
}

int do_validate(const std::string &path) {
    const kicktomo::ExperimentConfig cfg = kicktomo::parse_config_file(path);
    kicktomo::validate_config(cfg);
    std::cout << kicktomo::canonical_config_text(cfg) << "# config_hash: " << kicktomo::config_hash(cfg) << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Kicked-top continuous-measurement tomography experiments"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Run one experiment and write CSV series plus a manifest");
    run->add_option("--experiment,-e", run_args.experiment,
                    "fidelity_sweep | loschmidt | rel_entropy | otoc | bloch_perturb | perturb_sweep");
    run->add_option("--config,-c", run_args.config, "Config file (key = value lines)");
    run->add_option("--seed", run_args.seed, "Master seed");
    run->add_option("--lambda", run_args.lambdas, "Kick strengths (replaces lambda_list)");
    run->add_option("--out,-o", run_args.out, "Output directory");
    run->add_option("--set", run_args.overrides, "Override any config key, e.g. --set n_states=20");

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "Check a config file and print its canonical form");
    validate->add_option("--config,-c", validate_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run)
            return do_run(run_args);
        return do_validate(validate_path);
    } catch (const kicktomo::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
