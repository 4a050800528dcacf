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

/**
 * @file
 * Config-driven experiment runner. Each experiment is a seeded batch job
 * that writes one CSV series per swept parameter value plus a JSON run
 * manifest.
 *
 * Config files are flat `key = value` text; `#` starts a comment and list
 * values are comma or whitespace separated, optionally in brackets.
 */

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kicktomo/metric_series.hpp"
#include "kicktomo/types.hpp"

namespace kicktomo {

enum class ExperimentKind { fidelity_sweep, loschmidt, rel_entropy, otoc, bloch_perturb, perturb_sweep };

std::string_view experiment_name(ExperimentKind k);
/// Throws ConfigError for unknown names.
ExperimentKind parse_experiment_kind(std::string_view name);

/// Invalid configuration; field() names the offending key.
class ConfigError : public std::invalid_argument {
  public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}
    [[nodiscard]] const std::string &field() const { return field_; }

  private:
    std::string field_;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::fidelity_sweep;
    double j = 10.0;
    double alpha = 1.4;
    std::vector<double> lambda_list = {0.5, 2.5, 7.0};
    double delta_lambda = 0.01;
    std::vector<double> delta_lambda_list = {0.005, 0.01, 0.02};
    int n_steps = 200;
    int n_states = 100;
    /// Unset means 0.01 * j.
    std::optional<double> noise_sigma;
    std::vector<double> eta_list = {0.0, 0.1, 0.3};
    Seed seed = 1;
    std::string output_dir = "out";
    double rcond = 1e-10;
    double psd_tol = 1e-8;
    double kl_floor = 1e-12;
    /// One random initial observable for the whole ensemble (false: one per state).
    bool shared_observable = true;
    /// Generate records with the ideal map and reconstruct with the perturbed one.
    bool swap_dynamics = false;

    [[nodiscard]] double resolved_noise_sigma() const { return noise_sigma.value_or(0.01 * j); }
};

/// Keys accepted in config files and by --set.
const std::vector<std::string> &config_keys();

/// Sets one key from its textual value. Throws ConfigError on unknown keys
/// or unparsable values.
void apply_config_value(ExperimentConfig &cfg, std::string_view key, std::string_view value);

/// Parses config text on top of the defaults; later keys override earlier ones.
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::filesystem::path &path);

/// Range checks every field; throws ConfigError naming the first bad one.
void validate_config(const ExperimentConfig &cfg);

/// Stable `key = value` rendering of every field except output_dir.
std::string canonical_config_text(const ExperimentConfig &cfg);
/// 16 hex digits of FNV-1a over canonical_config_text.
std::string config_hash(const ExperimentConfig &cfg);

/// Independent stream seed for (master, stream name, index).
Seed derive_seed(Seed master, std::string_view stream, std::uint64_t index);

/// Shortest round-trip rendering of a double (used in file names).
std::string format_shortest(double v);
/// 17 significant digits.
std::string format_exact(double v);

/// Metadata written as `# key: value` lines above the CSV header.
using SeriesMetadata = std::vector<std::pair<std::string, std::string>>;

/**
 * Writes `experiment,lambda,delta_lambda,eta,step,value,stderr` rows.
 * Throws std::runtime_error naming the path on I/O failure.
 */
void write_series(const MetricSeries &series, std::string_view experiment,
                  const SeriesMetadata &metadata, const std::filesystem::path &path);

struct SeriesFile {
    std::map<std::string, std::string> metadata;
    std::string experiment;
    MetricSeries series;
};

SeriesFile read_series(const std::filesystem::path &path);

struct RunManifest {
    ExperimentConfig config;
    std::string config_hash;
    std::string code_version;
    std::vector<std::filesystem::path> outputs;
    double wall_seconds = 0.0;
    std::filesystem::path manifest_path;
};

/// Runs one experiment end to end and returns its finalized manifest.
RunManifest run(const ExperimentConfig &config);

/// Version string recorded in manifests.
std::string_view code_version();

} // namespace kicktomo
