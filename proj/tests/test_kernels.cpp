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

#include <omp.h>

#include <doctest.h>

#include "kicktomo/chaos_metrics.hpp"
#include "kicktomo/kernels.hpp"

using namespace kicktomo;

namespace {

struct Fixture {
    SpinParams spin = SpinParams::from_j(2);
    HermitianBasis basis = hermitian_basis(spin);
    OperatorTrajectory truth, experimenter;
    std::vector<PureState> states;
    std::vector<MeasurementRecord> records;

    Fixture() {
        KickedTopParams p;
        p.lambda = 7.0;
        p.delta_lambda = 0.05;
        p.spin = spin;
        const auto o = initial_observable(spin, 3);
        truth = operator_trajectory(o, floquet_map(p, true), 30);
        experimenter = operator_trajectory(o, floquet_map(p, false), 30);
        for (Seed s = 0; s < 6; ++s) {
            states.push_back(haar_random_state(spin, s));
            records.push_back(simulate_record(states.back().density(), truth, 0.1, 100 + s));
        }
    }

    EnsembleProblem problem() const {
        EnsembleProblem pr;
        pr.experimenter = &experimenter;
        pr.basis = &basis;
        pr.states = states;
        pr.records = records;
        pr.n_steps = 30;
        return pr;
    }
};

} // namespace

TEST_CASE("OpenMP ensemble kernel is bitwise identical to the serial reference") {
    const Fixture f;
    const auto ref = serial::ensemble_fidelity(f.problem());
    const int saved = omp_get_max_threads();
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        const auto par = omp::ensemble_fidelity(f.problem());
        CHECK(par.per_state == ref.per_state);
        CHECK(par.mean == ref.mean);
        CHECK(par.stderr == ref.stderr);
    }
    omp_set_num_threads(saved);
}

TEST_CASE("ensemble summary is the sample mean and standard error") {
    const Fixture f;
    const auto r = serial::ensemble_fidelity(f.problem());
    REQUIRE(r.per_state.rows() == 6);
    REQUIRE(r.per_state.cols() == 30);
    for (int k : {0, 14, 29}) {
        const RVector col = r.per_state.col(k);
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / 5.0);
        CHECK(r.mean[k] == doctest::Approx(mean).epsilon(1e-14));
        CHECK(r.stderr[k] == doctest::Approx(sd / std::sqrt(6.0)).epsilon(1e-12));
    }
}

TEST_CASE("pairwise series kernels agree and propagate errors") {
    const Fixture f;
    const PairMetric metric = [](const Observable &a, const Observable &b) {
        return commutator_incompatibility(a, b, 2.0);
    };
    const auto s = serial::pairwise_series(f.truth, f.experimenter, metric);
    omp_set_num_threads(3);
    const auto p = omp::pairwise_series(f.truth, f.experimenter, metric);
    CHECK(s.size() == 31);
    CHECK(s == p);

    const PairMetric failing = [](const Observable &, const Observable &) -> double {
        throw std::runtime_error("boom");
    };
    CHECK_THROWS_WITH_AS(omp::pairwise_series(f.truth, f.experimenter, failing), "boom", std::runtime_error);
    CHECK_THROWS_AS(serial::pairwise_series(f.truth, f.experimenter, failing), std::runtime_error);
}

TEST_CASE("ensemble kernels validate the problem") {
    const Fixture f;
    auto pr = f.problem();
    pr.n_steps = 31;
    CHECK_THROWS_AS(omp::ensemble_fidelity(pr), PreconditionError);
    CHECK_THROWS_AS(serial::ensemble_fidelity(pr), PreconditionError);
    pr = f.problem();
    pr.records = std::span<const MeasurementRecord>(f.records).first(5);
    CHECK_THROWS_AS(omp::ensemble_fidelity(pr), PreconditionError);
    CHECK(omp::max_threads() >= 1);
}
