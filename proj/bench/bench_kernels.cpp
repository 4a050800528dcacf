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

// Serial reference vs OpenMP kernels on the default spin (d = 21).
// The Threads argument sets the OpenMP team size; serial ignores it.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "kicktomo/chaos_metrics.hpp"
#include "kicktomo/kernels.hpp"
#include "kicktomo/kicked_top.hpp"
#include "kicktomo/tomography.hpp"

using namespace kicktomo;

namespace {

struct Fixture {
    SpinParams spin = SpinParams::from_j(10);
    HermitianBasis basis = hermitian_basis(spin);
    OperatorTrajectory truth, ideal;
    std::vector<PureState> states;
    std::vector<MeasurementRecord> records;

    Fixture(int n_steps, int n_states) {
        KickedTopParams p;
        p.lambda = 7.0;
        p.alpha = 1.4;
        p.delta_lambda = 0.01;
        p.spin = spin;
        const FloquetPair pair = floquet_pair(p);
        const Observable o = initial_observable(spin, 1);
        truth = operator_trajectory(o, pair.true_perturbed, n_steps);
        ideal = operator_trajectory(o, pair.ideal, n_steps);
        for (int i = 0; i < n_states; ++i) {
            states.push_back(haar_random_state(spin, 10 + i));
            records.push_back(simulate_record(states.back().density(), truth, 0.1, 100 + i));
        }
    }

    [[nodiscard]] EnsembleProblem problem(int n_steps) const {
        EnsembleProblem pr;
        pr.experimenter = &ideal;
        pr.basis = &basis;
        pr.states = states;
        pr.records = records;
        pr.n_steps = n_steps;
        return pr;
    }
};

const Fixture &fixture() {
    static const Fixture f(60, 8);
    return f;
}

void BM_EnsembleFidelitySerial(benchmark::State &st) {
    const auto pr = fixture().problem(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(serial::ensemble_fidelity(pr));
}

void BM_EnsembleFidelityOmp(benchmark::State &st) {
    omp_set_num_threads(static_cast<int>(st.range(1)));
    const auto pr = fixture().problem(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(omp::ensemble_fidelity(pr));
}

const PairMetric kEntropy = [](const Observable &a, const Observable &b) {
    return relative_entropy(regularize(a), regularize(b));
};

void BM_PairwiseSerial(benchmark::State &st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(serial::pairwise_series(fixture().truth, fixture().ideal, kEntropy));
}

void BM_PairwiseOmp(benchmark::State &st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(omp::pairwise_series(fixture().truth, fixture().ideal, kEntropy));
}

} // namespace

BENCHMARK(BM_EnsembleFidelitySerial)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleFidelityOmp)
    ->ArgsProduct({{30, 60}, {1, 2, 4}})
    ->ArgNames({"steps", "threads"})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseOmp)->Arg(1)->Arg(2)->Arg(4)->ArgName("threads")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
