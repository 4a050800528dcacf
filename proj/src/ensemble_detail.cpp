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

#include "ensemble_detail.hpp"

#include <cmath>

namespace kicktomo::detail {

DesignMatrix validate_and_design(const EnsembleProblem &problem) {
    if (problem.experimenter == nullptr || problem.basis == nullptr)
        throw PreconditionError("ensemble problem needs a trajectory and a basis");
    if (problem.states.empty())
        throw PreconditionError("ensemble needs at least one state");
    if (problem.states.size() != problem.records.size())
        throw PreconditionError("one record per state is required");
    if (problem.n_steps < 1)
        throw PreconditionError("ensemble needs at least one step");
    if (problem.experimenter->n_steps() < problem.n_steps)
        throw PreconditionError("experimenter trajectory is shorter than n_steps");
    for (const auto &r : problem.records)
        if (r.size() < problem.n_steps)
            throw PreconditionError("record is shorter than n_steps");
    const auto ops = problem.experimenter->measured().first(static_cast<std::size_t>(problem.n_steps));
    return design_matrix(ops, *problem.basis);
}

StepSystem step_system(const DesignMatrix &full, int n, double rcond) {
    StepSystem sys;
    sys.design.entries = full.entries.topRows(n);
    sys.cov = covariance(sys.design, rcond);
    return sys;
}

double reconstruct_fidelity(const StepSystem &sys, const EnsembleProblem &problem, int i, int n) {
    const MeasurementRecord rec = problem.records[static_cast<std::size_t>(i)].prefix(n);
    const BlochVector r_ml = ml_estimate(sys.cov, sys.design, rec);
    ProjectionOptions opts;
    opts.tol = problem.tol;
    opts.lipschitz = sys.cov.max_eigenvalue;
    const PsdProjection proj = psd_project(r_ml, sys.design, *problem.basis, opts);
    return fidelity(problem.states[static_cast<std::size_t>(i)], proj.rho_bar);
}

void summarize(EnsembleFidelity &out) {
    const Eigen::Index states = out.per_state.rows();
    const Eigen::Index steps = out.per_state.cols();
    out.mean.assign(static_cast<std::size_t>(steps), 0.0);
    out.stderr.assign(static_cast<std::size_t>(steps), 0.0);
    for (Eigen::Index s = 0; s < steps; ++s) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < states; ++i)
            sum += out.per_state(i, s);
        const double mean = sum / static_cast<double>(states);
        double ss = 0.0;
        for (Eigen::Index i = 0; i < states; ++i) {
            const double dev = out.per_state(i, s) - mean;
            ss += dev * dev;
        }
        out.mean[static_cast<std::size_t>(s)] = mean;
        if (states > 1)
            out.stderr[static_cast<std::size_t>(s)] =
                std::sqrt(ss / static_cast<double>(states - 1)) / std::sqrt(static_cast<double>(states));
    }
}

} // namespace kicktomo::detail
