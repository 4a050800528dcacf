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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "kicktomo/experiments.hpp"
#include "kicktomo/kicked_top.hpp"
#include "kicktomo/tomography.hpp"

using namespace kicktomo;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
    const fs::path p = fs::temp_directory_path() / ("kicktomo_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_config(ExperimentKind kind, const fs::path &out) {
    ExperimentConfig c;
    c.experiment = kind;
    c.j = 1.5;
    c.n_steps = 12;
    c.n_states = 3;
    c.output_dir = out.string();
    return c;
}

} // namespace

TEST_CASE("empty config yields the documented defaults") {
    const auto c = parse_config_text("");
    CHECK(c.experiment == ExperimentKind::fidelity_sweep);
    CHECK(c.j == 10.0);
    CHECK(c.alpha == 1.4);
    CHECK(c.delta_lambda == 0.01);
    CHECK(c.n_steps == 200);
    CHECK(c.n_states == 100);
    CHECK(c.resolved_noise_sigma() == doctest::Approx(0.1));
    CHECK(c.lambda_list == std::vector<double>{0.5, 2.5, 7.0});
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("config text parsing") {
    const auto c = parse_config_text(R"(
# a comment
experiment = perturb_sweep
lambda_list = [-1]
delta_lambda_list = 0.005, 0.01 0.02   # trailing comment
n_states = 20
noise_sigma = 0.05
shared_observable = false
seed = 18446744073709551615
)");
    CHECK(c.experiment == ExperimentKind::perturb_sweep);
    CHECK(c.lambda_list == std::vector<double>{-1.0});
    CHECK(c.delta_lambda_list == std::vector<double>{0.005, 0.01, 0.02});
    CHECK(c.n_states == 20);
    CHECK(c.resolved_noise_sigma() == 0.05);
    CHECK_FALSE(c.shared_observable);
    CHECK(c.seed == 18446744073709551615ULL);
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("config errors name the offending field") {
    const auto field_of = [](auto &&fn) {
        try {
            fn();
        } catch (const ConfigError &e) {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of([] { validate_config(parse_config_text("j = 10.3")); }) == "j");
    CHECK(field_of([] { parse_config_text("lamda_list = 1"); }) == "lamda_list");
    CHECK(field_of([] { parse_config_text("n_steps = abc"); }) == "n_steps");
    CHECK(field_of([] { parse_config_text("n_steps = 2.5"); }) == "n_steps");
    CHECK(field_of([] { parse_config_text("experiment = nope"); }) == "experiment");
    CHECK(field_of([] { parse_config_text("swap_dynamics = maybe"); }) == "swap_dynamics");
    CHECK(field_of([] { validate_config(parse_config_text("n_states = 0")); }) == "n_states");
    CHECK(field_of([] { validate_config(parse_config_text("lambda_list = []")); }) == "lambda_list");
    CHECK(field_of([] { validate_config(parse_config_text("noise_sigma = -1")); }) == "noise_sigma");
    CHECK(field_of([] {
              validate_config(parse_config_text("experiment = bloch_perturb\neta_list = 0.5, 1.5"));
          }) == "eta_list");
    CHECK_THROWS_AS(parse_config_text("just words"), ConfigError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/kicktomo.cfg"), ConfigError);
}

TEST_CASE("config hash ignores output_dir and tracks every other field") {
    ExperimentConfig a;
    ExperimentConfig b = a;
    b.output_dir = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.noise_sigma = 0.1; // same as the resolved default
    CHECK(config_hash(a) == config_hash(b));
    CHECK(parse_config_text(canonical_config_text(a)).lambda_list == a.lambda_list);
}

TEST_CASE("derived seeds are distinct across streams and indices") {
    CHECK(derive_seed(1, "state", 0) != derive_seed(1, "state", 1));
    CHECK(derive_seed(1, "state", 0) != derive_seed(1, "noise", 0));
    CHECK(derive_seed(1, "state", 0) != derive_seed(2, "state", 0));
    CHECK(derive_seed(1, "state", 5) == derive_seed(1, "state", 5));
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -7.25, 0.99999999999999989}) {
        CHECK(std::stod(format_exact(v)) == v);
        CHECK(std::stod(format_shortest(v)) == v);
    }
    CHECK(format_shortest(7.0) == "7");
    CHECK(format_shortest(0.5) == "0.5");
}

TEST_CASE("series CSV round-trips to the last bit") {
    const fs::path dir = scratch_dir("roundtrip");
    fs::create_directories(dir);
    MetricSeries s;
    s.metric = Metric::fidelity;
    s.params.lambda = 2.5;
    s.params.delta_lambda = 0.01;
    s.params.seed = 42;
    for (int k = 1; k <= 5; ++k) {
        s.times.push_back(k);
        s.values.push_back(1.0 / (k + 2.0));
        s.stderr.push_back(std::sqrt(k) * 1e-3);
    }
    write_series(s, "fidelity_sweep", {{"metric", "fidelity"}, {"seed", "42"}}, dir / "a.csv");
    const auto back = read_series(dir / "a.csv");
    CHECK(back.experiment == "fidelity_sweep");
    CHECK(back.series.times == s.times);
    CHECK(back.series.values == s.values);
    CHECK(back.series.stderr == s.stderr);
    CHECK(back.series.params.lambda == 2.5);
    CHECK_FALSE(back.series.params.eta.has_value());
    CHECK(back.series.params.seed == 42);
    CHECK(back.metadata.at("metric") == "fidelity");

    const std::string text = slurp(dir / "a.csv");
    CHECK(text.find("experiment,lambda,delta_lambda,eta,step,value,stderr\n") != std::string::npos);
    CHECK(text.find("fidelity_sweep,2.5,0.01,,1,") != std::string::npos);
}

TEST_CASE("series writer reports the path on failure") {
    MetricSeries s;
    CHECK_THROWS_WITH_AS(write_series(s, "x", {}, "/nonexistent_dir/x.csv"),
                         doctest::Contains("/nonexistent_dir/x.csv"), std::runtime_error);
}

TEST_CASE("loschmidt run with matched dynamics writes a constant 1.0 column") {
    const fs::path dir = scratch_dir("loschmidt");
    auto c = small_config(ExperimentKind::loschmidt, dir);
    c.delta_lambda = 0.0;
    c.lambda_list = {0.5, 7.0};
    const auto m = run(c);
    REQUIRE(m.outputs.size() == 2);
    CHECK(m.outputs[0].filename() == "loschmidt_lambda_0.5.csv");
    for (const auto &p : m.outputs) {
        const auto f = read_series(p);
        CHECK(f.series.size() == 12);
        CHECK(f.series.times.front() == 1);
        CHECK_FALSE(f.series.has_stderr());
        for (double v : f.series.values)
            CHECK(v == 1.0);
        CHECK(f.metadata.at("units") == "dimensionless");
        CHECK(f.metadata.at("config_hash") == m.config_hash);
    }
    const auto j = nlohmann::json::parse(slurp(m.manifest_path));
    CHECK(j["status"] == "complete");
    CHECK(j["outputs"].size() == 2);
    CHECK(j["config"]["delta_lambda"] == 0.0);
    CHECK(j["code_version"] == std::string(code_version()));
}

TEST_CASE("metric experiments write n_steps rows") {
    const fs::path dir = scratch_dir("metrics");
    for (auto kind : {ExperimentKind::rel_entropy, ExperimentKind::otoc}) {
        auto c = small_config(kind, dir);
        c.lambda_list = {3.0};
        const auto m = run(c);
        REQUIRE(m.outputs.size() == 1);
        const auto f = read_series(m.outputs[0]);
        CHECK(f.series.size() == 12);
        CHECK(f.series.metric == (kind == ExperimentKind::otoc ? Metric::otoc : Metric::rel_entropy));
    }
    CHECK(read_series(dir / "rel_entropy_lambda_3.csv").metadata.at("units") == "nats");
}

TEST_CASE("fidelity runs are deterministic and use per-index sub-seeds") {
    const fs::path d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
    auto c = small_config(ExperimentKind::fidelity_sweep, d1);
    c.lambda_list = {7.0};
    const auto m1 = run(c);
    c.output_dir = d2.string();
    const auto m2 = run(c);
    CHECK(slurp(m1.outputs[0]) == slurp(m2.outputs[0]));

    // Rebuild the same ensemble from the documented seed streams.
    const auto spin = SpinParams::from_j(c.j);
    std::vector<PureState> states;
    EnsembleOptions opts;
    for (int i = 0; i < c.n_states; ++i) {
        states.push_back(haar_random_state(spin, derive_seed(c.seed, "state", static_cast<std::uint64_t>(i))));
        opts.noise_seeds.push_back(derive_seed(c.seed, "noise", static_cast<std::uint64_t>(i)));
    }
    opts.noise_sigma = c.resolved_noise_sigma();
    opts.n_steps = c.n_steps;
    KickedTopParams p;
    p.lambda = 7.0;
    p.alpha = c.alpha;
    p.delta_lambda = c.delta_lambda;
    p.spin = spin;
    const auto o = initial_observable(spin, derive_seed(c.seed, "observable", 0));
    const auto pair = floquet_pair(p);
    const auto expected = ensemble_average_fidelity(states, operator_trajectory(o, pair.true_perturbed, c.n_steps),
                                                    operator_trajectory(o, pair.ideal, c.n_steps),
                                                    hermitian_basis(spin), opts);
    const auto f = read_series(m1.outputs[0]);
    CHECK(f.series.values == expected.values);
    CHECK(f.series.stderr == expected.stderr);
}

TEST_CASE("per-state observables and swapped dynamics run") {
    const fs::path dir = scratch_dir("variants");
    auto c = small_config(ExperimentKind::fidelity_sweep, dir);
    c.lambda_list = {2.0};
    c.shared_observable = false;
    c.swap_dynamics = true;
    const auto m = run(c);
    const auto f = read_series(m.outputs[0]);
    CHECK(f.series.size() == 12);
    CHECK(f.metadata.at("shared_observable") == "false");
    for (double v : f.series.values) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0 + 1e-9);
    }
}

TEST_CASE("perturb sweep names one file per (lambda, delta_lambda)") {
    const fs::path dir = scratch_dir("perturb");
    auto c = small_config(ExperimentKind::perturb_sweep, dir);
    c.lambda_list = {7.0};
    c.delta_lambda_list = {0.005, 0.02};
    const auto m = run(c);
    REQUIRE(m.outputs.size() == 2);
    CHECK(m.outputs[0].filename() == "perturb_sweep_lambda_7_dlambda_0.005.csv");
    CHECK(read_series(m.outputs[1]).series.params.delta_lambda == 0.02);
}

TEST_CASE("bloch_perturb writes the full k range and the inset") {
    const fs::path dir = scratch_dir("bloch");
    auto c = small_config(ExperimentKind::bloch_perturb, dir);
    c.eta_list = {0.0, 0.5};
    const auto m = run(c);
    REQUIRE(m.outputs.size() == 3);
    const auto f = read_series(m.outputs[0]);
    CHECK(f.series.size() == 16);
    CHECK(f.series.times.front() == 0);
    CHECK(f.series.values.front() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(f.series.values.back() - 1.0) < 1e-10);
    CHECK(m.outputs[2].filename() == "bloch_perturb_inset.csv");
    CHECK(slurp(m.outputs[2]).find("eta,frobenius_distance\n") != std::string::npos);
}

TEST_CASE("run validates before touching the filesystem") {
    const fs::path dir = scratch_dir("invalid");
    auto c = small_config(ExperimentKind::otoc, dir);
    c.j = 1.2;
    CHECK_THROWS_AS(run(c), ConfigError);
    CHECK_FALSE(fs::exists(dir));
}
