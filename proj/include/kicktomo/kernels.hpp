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
 * Data-parallel kernels. Every kernel exists twice: a plain serial loop in
 * kicktomo::serial, kept as the reference, and an OpenMP version in
 * kicktomo::omp. Both perform the same arithmetic per work item and assemble
 * results in index order, so their outputs are bitwise identical for any
 * thread count.
 */

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kicktomo/kicked_top.hpp"
#include "kicktomo/spin_algebra.hpp"
#include "kicktomo/tomography.hpp"

namespace kicktomo {

/// Reconstruction of many states from records sharing one experimenter
/// trajectory. Fidelity is evaluated after each of the first n_steps records.
struct EnsembleProblem {
    const OperatorTrajectory *experimenter = nullptr;
    const HermitianBasis *basis = nullptr;
    std::span<const PureState> states;
    std::span<const MeasurementRecord> records;
    int n_steps = 0;
    double rcond = 1e-10;
    double tol = 1e-8;
};

struct EnsembleFidelity {
    /// (state, step-1) -> <psi|rho_bar|psi> after `step` records.
    RMatrix per_state;
    std::vector<double> mean;
    /// Sample standard deviation over states / sqrt(n_states); 0 for one state.
    std::vector<double> stderr;
};

using PairMetric = std::function<double(const Observable &, const Observable &)>;

namespace serial {

EnsembleFidelity ensemble_fidelity(const EnsembleProblem &problem);

/// f(a[k], b[k]) for k = 0..n.
std::vector<double> pairwise_series(const OperatorTrajectory &a, const OperatorTrajectory &b,
                                    const PairMetric &f);

} // namespace serial

namespace omp {

/// Covariance per step is computed once; states are reconstructed in parallel.
EnsembleFidelity ensemble_fidelity(const EnsembleProblem &problem);

std::vector<double> pairwise_series(const OperatorTrajectory &a, const OperatorTrajectory &b,
                                    const PairMetric &f);

/// Threads available to the OpenMP kernels.
int max_threads();

} // namespace omp

} // namespace kicktomo
