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
 * Kicked-top Floquet maps U = exp(-i lambda Jz^2 / 2j) exp(-i alpha Jx),
 * Heisenberg-picture operator trajectories and the error unitary.
 */

#pragma once

#include <span>
#include <vector>

#include "kicktomo/types.hpp"

namespace kicktomo {

struct KickedTopParams {
    double lambda = 0.0;       ///< kick strength
    double alpha = 1.4;        ///< rotation angle about x
    double delta_lambda = 0.0; ///< perturbation added to lambda in the true map
    SpinParams spin = SpinParams::from_j(10.0);
};

/// Ideal map at lambda (what the experimenter assumes) and true map at
/// lambda + delta_lambda (what generates the data).
struct FloquetPair {
    UnitaryMatrix ideal;
    UnitaryMatrix true_perturbed;
};

/// O_0, O_1, ..., O_n with O_{k+1} = U^dagger O_k U.
class OperatorTrajectory {
  public:
    OperatorTrajectory() = default;
    explicit OperatorTrajectory(std::vector<Observable> steps);

    [[nodiscard]] int n_steps() const { return static_cast<int>(steps_.size()) - 1; }
    [[nodiscard]] const Observable &operator[](int k) const { return steps_[k]; }
    [[nodiscard]] const std::vector<Observable> &steps() const { return steps_; }
    [[nodiscard]] const Observable &initial() const { return steps_.front(); }

    /// The measured operators O_1 ... O_n (the record skips O_0).
    [[nodiscard]] std::span<const Observable> measured() const {
        return std::span<const Observable>(steps_).subspan(1);
    }

  private:
    std::vector<Observable> steps_;
};

/// exp(-i lambda' Jz^2 / 2j) exp(-i alpha Jx) with lambda' = lambda, or
/// lambda + delta_lambda when use_perturbed is set.
UnitaryMatrix floquet_map(const KickedTopParams &p, bool use_perturbed);

FloquetPair floquet_pair(const KickedTopParams &p);

/// V Jx V^dagger for a Haar-random V drawn from seed.
Observable initial_observable(const SpinParams &p, Seed seed);
/// V Jx V^dagger for a given rotation V.
Observable initial_observable(const SpinParams &p, const UnitaryMatrix &v);

OperatorTrajectory operator_trajectory(const Observable &o, const UnitaryMatrix &u, int n_steps);

/// U'^n (U^n)^dagger with U' the ideal map and U the true map.
UnitaryMatrix error_unitary(const FloquetPair &pair, int n);

} // namespace kicktomo
