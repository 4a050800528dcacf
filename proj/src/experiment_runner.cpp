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

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "kicktomo/bloch_analysis.hpp"
#include "kicktomo/chaos_metrics.hpp"
#include "kicktomo/experiments.hpp"
#include "kicktomo/kicked_top.hpp"
#include "kicktomo/tomography.hpp"

#ifndef KICKTOMO_VERSION
#define KICKTOMO_VERSION "unknown"
#endif

namespace kicktomo {

namespace {

using json = nlohmann::ordered_json;

// Stream names for derive_seed. Each draw is keyed by (stream, index) so
// adding states or sweep values never shifts existing streams.
constexpr std::string_view kObservableStream = "observable";
constexpr std::string_view kStateStream = "state";
constexpr std::string_view kNoiseStream = "noise";
constexpr std::string_view kBlochUnitaryStream = "bloch_unitary";

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json config_json(const ExperimentConfig &c) {
    json j;
    j["experiment"] = experiment_name(c.experiment);
    j["j"] = c.j;
    j["alpha"] = c.alpha;
    j["lambda_list"] = c.lambda_list;
    j["delta_lambda"] = c.delta_lambda;
    j["delta_lambda_list"] = c.delta_lambda_list;
    j["n_steps"] = c.n_steps;
    j["n_states"] = c.n_states;
    j["noise_sigma"] = c.resolved_noise_sigma();
    j["eta_list"] = c.eta_list;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["rcond"] = c.rcond;
    j["psd_tol"] = c.psd_tol;
    j["kl_floor"] = c.kl_floor;
    j["shared_observable"] = c.shared_observable;
    j["swap_dynamics"] = c.swap_dynamics;
    return j;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    // Write-then-rename so a reader never sees a half-written manifest.
    const auto tmp = std::filesystem::path(path).concat(".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out.flush())
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

class Runner {
  public:
    explicit Runner(const ExperimentConfig &cfg)
        : cfg_(cfg), spin_(SpinParams::from_j(cfg.j)), hash_(config_hash(cfg)) {}

    std::vector<std::filesystem::path> execute() {
        switch (cfg_.experiment) {
        case ExperimentKind::fidelity_sweep:
            for (double lambda : cfg_.lambda_list)
                fidelity_run(lambda, cfg_.delta_lambda,
                             "fidelity_sweep_lambda_" + format_shortest(lambda));
            break;
        case ExperimentKind::perturb_sweep:
            for (double lambda : cfg_.lambda_list)
                for (double dl : cfg_.delta_lambda_list)
                    fidelity_run(lambda, dl,
                                 "perturb_sweep_lambda_" + format_shortest(lambda) + "_dlambda_" +
                                     format_shortest(dl));
            break;
        case ExperimentKind::loschmidt:
        case ExperimentKind::rel_entropy:
        case ExperimentKind::otoc:
            for (double lambda : cfg_.lambda_list)
                metric_run(lambda);
            break;
        case ExperimentKind::bloch_perturb:
            bloch_run();
            break;
        }
        return outputs_;
    }

  private:
    SeriesMetadata metadata(Metric m) const {
        SeriesMetadata md = {
            {"experiment", std::string(experiment_name(cfg_.experiment))},
            {"metric", std::string(metric_name(m))},
            {"units", std::string(metric_units(m))},
            {"seed", std::to_string(cfg_.seed)},
            {"config_hash", hash_},
            {"code_version", std::string(code_version())},
            {"j", format_shortest(cfg_.j)},
            {"alpha", format_shortest(cfg_.alpha)},
        };
        if (m == Metric::fidelity && cfg_.experiment != ExperimentKind::bloch_perturb) {
            md.emplace_back("n_states", std::to_string(cfg_.n_states));
            md.emplace_back("noise_sigma", format_shortest(cfg_.resolved_noise_sigma()));
            md.emplace_back("shared_observable", cfg_.shared_observable ? "true" : "false");
            md.emplace_back("swap_dynamics", cfg_.swap_dynamics ? "true" : "false");
        }
        if (m == Metric::rel_entropy)
            md.emplace_back("kl_floor", format_shortest(cfg_.kl_floor));
        if (cfg_.experiment == ExperimentKind::bloch_perturb)
            md.emplace_back("n_states", std::to_string(cfg_.n_states));
        return md;
    }

    void emit(const MetricSeries &s, Metric m, const std::string &stem) {
        const auto path = std::filesystem::path(cfg_.output_dir) / (stem + ".csv");
        write_series(s, experiment_name(cfg_.experiment), metadata(m), path);
        outputs_.push_back(path);
    }

    Observable observable(std::uint64_t index) const {
        return initial_observable(spin_, derive_seed(cfg_.seed, kObservableStream, index));
    }

    std::vector<PureState> states() const {
        std::vector<PureState> out;
        out.reserve(static_cast<std::size_t>(cfg_.n_states));
        for (int i = 0; i < cfg_.n_states; ++i)
            out.push_back(haar_random_state(spin_, derive_seed(cfg_.seed, kStateStream, static_cast<std::uint64_t>(i))));
        return out;
    }

    std::vector<Seed> noise_seeds(int first, int count) const {
        std::vector<Seed> out;
        for (int i = first; i < first + count; ++i)
            out.push_back(derive_seed(cfg_.seed, kNoiseStream, static_cast<std::uint64_t>(i)));
        return out;
    }

    /// (true, experimenter) trajectories of one observable.
    std::pair<OperatorTrajectory, OperatorTrajectory> trajectories(const Observable &o, double lambda,
                                                                   double delta_lambda) const {
        KickedTopParams p;
        p.lambda = lambda;
        p.alpha = cfg_.alpha;
        p.delta_lambda = delta_lambda;
        p.spin = spin_;
        const FloquetPair pair = floquet_pair(p);
        OperatorTrajectory perturbed = operator_trajectory(o, pair.true_perturbed, cfg_.n_steps);
        OperatorTrajectory ideal = operator_trajectory(o, pair.ideal, cfg_.n_steps);
        if (cfg_.swap_dynamics)
            return {std::move(ideal), std::move(perturbed)};
        return {std::move(perturbed), std::move(ideal)};
    }

    EnsembleOptions ensemble_options(int first_state, int count) const {
        EnsembleOptions opts;
        opts.noise_sigma = cfg_.resolved_noise_sigma();
        opts.noise_seeds = noise_seeds(first_state, count);
        opts.n_steps = cfg_.n_steps;
        opts.rcond = cfg_.rcond;
        opts.tol = cfg_.psd_tol;
        return opts;
    }

    void fidelity_run(double lambda, double delta_lambda, const std::string &stem) {
        const auto ensemble = states();
        const HermitianBasis &basis = this->basis();
        MetricSeries s;
        if (cfg_.shared_observable) {
            const auto [truth, experimenter] = trajectories(observable(0), lambda, delta_lambda);
            s = ensemble_average_fidelity(ensemble, truth, experimenter, basis,
                                          ensemble_options(0, cfg_.n_states));
        } else {
            // One observable per state: each state is its own one-member ensemble.
            RMatrix per_state(cfg_.n_states, cfg_.n_steps);
            for (int i = 0; i < cfg_.n_states; ++i) {
                const auto [truth, experimenter] =
                    trajectories(observable(static_cast<std::uint64_t>(i)), lambda, delta_lambda);
                const MetricSeries one = ensemble_average_fidelity(
                    std::span<const PureState>(&ensemble[static_cast<std::size_t>(i)], 1), truth,
                    experimenter, basis, ensemble_options(i, 1));
                for (int n = 0; n < cfg_.n_steps; ++n)
                    per_state(i, n) = one.values[static_cast<std::size_t>(n)];
            }
            s = summarize_rows(per_state, 1);
        }
        s.metric = Metric::fidelity;
        s.params.lambda = lambda;
        s.params.delta_lambda = delta_lambda;
        s.params.seed = cfg_.seed;
        emit(s, Metric::fidelity, stem);
    }

    void metric_run(double lambda) {
        const auto [truth, ideal] = trajectories(observable(0), lambda, cfg_.delta_lambda);
        MetricSeries s;
        Metric m = Metric::loschmidt;
        switch (cfg_.experiment) {
        case ExperimentKind::loschmidt:
            s = loschmidt_echo(truth, ideal);
            break;
        case ExperimentKind::rel_entropy:
            m = Metric::rel_entropy;
            s = relative_entropy_series(truth, ideal, cfg_.kl_floor);
            break;
        default:
            m = Metric::otoc;
            s = operator_incompatibility(truth, ideal, cfg_.j);
            break;
        }
        // Step 0 compares O with itself; the files carry the n_steps evolved steps.
        s.times.erase(s.times.begin());
        s.values.erase(s.values.begin());
        s.params.lambda = lambda;
        s.params.delta_lambda = cfg_.delta_lambda;
        s.params.seed = cfg_.seed;
        emit(s, m, std::string(experiment_name(cfg_.experiment)) + "_lambda_" + format_shortest(lambda));
    }

    void bloch_run() {
        const auto ensemble = states();
        const HermitianBasis &basis = this->basis();
        const UnitaryMatrix ur = haar_random_unitary(spin_, derive_seed(cfg_.seed, kBlochUnitaryStream, 0));
        const int n_k = basis.size() + 1;

        std::ostringstream inset;
        for (const auto &[key, value] : metadata(Metric::fidelity))
            inset << "# " << key << ": " << value << '\n';
        inset << "eta,frobenius_distance\n";

        for (double eta : cfg_.eta_list) {
            const HermitianBasis perturbed = perturbed_basis(basis, ur, eta);
            RMatrix per_state(cfg_.n_states, n_k);
            for (int i = 0; i < cfg_.n_states; ++i) {
                const MetricSeries curve =
                    ideal_fidelity_curve(ensemble[static_cast<std::size_t>(i)].density(), basis, perturbed);
                for (int k = 0; k < n_k; ++k)
                    per_state(i, k) = curve.values[static_cast<std::size_t>(k)];
            }
            MetricSeries s = summarize_rows(per_state, 0);
            s.params.eta = eta;
            s.params.seed = cfg_.seed;
            emit(s, Metric::fidelity, "bloch_perturb_eta_" + format_shortest(eta));
            inset << format_exact(eta) << ','
                  << format_exact(frobenius_distance_to_identity(unitary_fractional_power(ur, eta))) << '\n';
        }
        const auto path = std::filesystem::path(cfg_.output_dir) / "bloch_perturb_inset.csv";
        write_text(path, inset.str());
        outputs_.push_back(path);
    }

    /// Mean and standard error over rows; column c is time first_time + c.
    static MetricSeries summarize_rows(const RMatrix &rows, int first_time) {
        const auto n = static_cast<double>(rows.rows());
        MetricSeries s;
        for (Eigen::Index c = 0; c < rows.cols(); ++c) {
            double sum = 0.0;
            for (Eigen::Index r = 0; r < rows.rows(); ++r)
                sum += rows(r, c);
            const double mean = sum / n;
            double ss = 0.0;
            for (Eigen::Index r = 0; r < rows.rows(); ++r)
                ss += (rows(r, c) - mean) * (rows(r, c) - mean);
            s.times.push_back(first_time + static_cast<int>(c));
            s.values.push_back(mean);
            s.stderr.push_back(rows.rows() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0);
        }
        return s;
    }

    const HermitianBasis &basis() {
        if (!basis_)
            basis_ = hermitian_basis(spin_);
        return *basis_;
    }

    const ExperimentConfig &cfg_;
    SpinParams spin_;
    std::string hash_;
    std::optional<HermitianBasis> basis_;
    std::vector<std::filesystem::path> outputs_;
};

json manifest_json(const RunManifest &m, std::string_view status, const std::string &started) {
    json j;
    j["status"] = status;
    j["experiment"] = experiment_name(m.config.experiment);
    j["seed"] = m.config.seed;
    j["config_hash"] = m.config_hash;
    j["code_version"] = m.code_version;
    j["config"] = config_json(m.config);
    j["started_at"] = started;
    json outputs = json::array();
    for (const auto &p : m.outputs)
        outputs.push_back(p.string());
    j["outputs"] = outputs;
    return j;
}

} // namespace

std::string_view code_version() { return KICKTOMO_VERSION; }

RunManifest run(const ExperimentConfig &config) {
    validate_config(config);
    const auto t0 = std::chrono::steady_clock::now();

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + config.output_dir + ": " + ec.message());

    RunManifest m;
    m.config = config;
    m.config_hash = config_hash(config);
    m.code_version = std::string(code_version());
    m.manifest_path =
        std::filesystem::path(config.output_dir) / (std::string(experiment_name(config.experiment)) + "_manifest.json");

    const std::string started = utc_now();
    write_text(m.manifest_path, manifest_json(m, "running", started).dump(2) + "\n");

    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    try {
        m.outputs = Runner(config).execute();
    } catch (const std::exception &e) {
        json j = manifest_json(m, "failed", started);
        j["error"] = e.what();
        j["wall_seconds"] = elapsed();
        write_text(m.manifest_path, j.dump(2) + "\n");
        throw;
    }
    m.wall_seconds = elapsed();
    json j = manifest_json(m, "complete", started);
    j["finished_at"] = utc_now();
    j["wall_seconds"] = m.wall_seconds;
    write_text(m.manifest_path, j.dump(2) + "\n");
    return m;
}

} // namespace kicktomo
