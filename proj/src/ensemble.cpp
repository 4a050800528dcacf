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

#include "kicktomo/kernels.hpp"
#include "kicktomo/tomography.hpp"

namespace kicktomo {

MetricSeries ensemble_average_fidelity(std::span<const PureState> states,
                                       const OperatorTrajectory &true_traj,
                                       const OperatorTrajectory &experimenter_traj,
                                       const HermitianBasis &basis, const EnsembleOptions &opts) {
    if (opts.noise_seeds.size() != states.size())
        throw PreconditionError("one noise seed per state is required");
    if (true_traj.n_steps() < opts.n_steps)
        throw PreconditionError("true trajectory is shorter than n_steps");
    std::vector<MeasurementRecord> records;
    records.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        records.push_back(simulate_record(states[i].density(), true_traj, opts.noise_sigma, opts.noise_seeds[i]));

    EnsembleProblem problem;
    problem.experimenter = &experimenter_traj;
    problem.basis = &basis;
    problem.states = states;
    problem.records = records;
    problem.n_steps = opts.n_steps;
    problem.rcond = opts.rcond;
    problem.tol = opts.tol;
    EnsembleFidelity fid = omp::ensemble_fidelity(problem);

    MetricSeries s;
    s.metric = Metric::fidelity;
    s.times.resize(static_cast<std::size_t>(opts.n_steps));
    for (int n = 1; n <= opts.n_steps; ++n)
        s.times[static_cast<std::size_t>(n - 1)] = n;
    s.values = std::move(fid.mean);
    s.stderr = std::move(fid.stderr);
    return s;
}

} // namespace kicktomo
