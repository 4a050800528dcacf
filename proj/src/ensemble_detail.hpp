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

// Work items shared by the serial and OpenMP ensemble kernels.

#pragma once

#include "kicktomo/kernels.hpp"

namespace kicktomo::detail {

/// Design matrix of all n_steps experimenter operators, built once.
DesignMatrix validate_and_design(const EnsembleProblem &problem);

struct StepSystem {
    DesignMatrix design;
    CovarianceMatrix cov;
};

/// Least-squares system of the first n records.
StepSystem step_system(const DesignMatrix &full, int n, double rcond);

/// Fidelity of state i reconstructed from its first n records.
double reconstruct_fidelity(const StepSystem &sys, const EnsembleProblem &problem, int i, int n);

/// Fills mean and stderr from per_state, summing states in index order.
void summarize(EnsembleFidelity &out);

} // namespace kicktomo::detail
