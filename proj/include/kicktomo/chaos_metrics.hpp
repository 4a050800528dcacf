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
 * Operator-space comparisons between the true and ideal Heisenberg
 * trajectories: operator Loschmidt echo, relative entropy of regularized
 * operators, and the commutator-norm incompatibility (error OTOC).
 */

#pragma once

#include "kicktomo/kicked_top.hpp"
#include "kicktomo/metric_series.hpp"
#include "kicktomo/types.hpp"

namespace kicktomo {

/// Eigenvalue floor applied before taking logarithms.
inline constexpr double kDefaultEntropyFloor = 1e-12;

/**
 * Positive unit-trace operator V |D| V^dagger / Tr|D| built from an
 * observable O = V D V^dagger. Keeps its spectral decomposition.
 */
class RegularizedOperator {
  public:
    [[nodiscard]] const CMatrix &matrix() const { return matrix_; }
    [[nodiscard]] const RVector &eigenvalues() const { return weights_; }
    [[nodiscard]] const CMatrix &eigenvectors() const { return vectors_; }

  private:
    friend RegularizedOperator regularize(const Observable &o);
    CMatrix matrix_;
    RVector weights_;
    CMatrix vectors_;
};

/// Throws PreconditionError for the zero operator.
RegularizedOperator regularize(const Observable &o);

/// Tr(a (ln a - ln b)) in nats, with both spectra floored and renormalized.
double relative_entropy(const RegularizedOperator &a, const RegularizedOperator &b,
                        double floor = kDefaultEntropyFloor);

/// Tr(O_n O'_n) / Tr(O^2) for n = 0..N, evaluated as 1 - |O_n - O'_n|^2 / (2 Tr O^2).
MetricSeries loschmidt_echo(const OperatorTrajectory &traj_true,
                            const OperatorTrajectory &traj_ideal);

/// D_KL(rho_{O_n} || rho_{O'_n}) for n = 0..N.
MetricSeries relative_entropy_series(const OperatorTrajectory &traj_true,
                                     const OperatorTrajectory &traj_ideal,
                                     double floor = kDefaultEntropyFloor);

/// (1 / 2j^4) Tr([A, B]^dagger [A, B]).
double commutator_incompatibility(const Observable &a, const Observable &b, double j);

/// I_O(n) = (1 / 2j^4) Tr(|[O_n, O'_n]|^2) for n = 0..N.
MetricSeries operator_incompatibility(const OperatorTrajectory &traj_true,
                                      const OperatorTrajectory &traj_ideal, double j);

/**
 * The same quantity written as an OTOC of the initial observable under the
 * error unitary E_n = U'^n U^-n: (1 / 2j^4) Tr(|[O, E_n^dagger O E_n]|^2).
 */
double incompatibility_otoc_form(const Observable &o, const FloquetPair &pair, int n, double j);

} // namespace kicktomo
