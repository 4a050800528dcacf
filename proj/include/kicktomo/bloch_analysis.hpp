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
 * Noiseless idealized tomography that learns Bloch components one at a time,
 * largest |r_a| first, through a basis rotated by a fractional power of a
 * random unitary. Unmeasured components are guessed as zero.
 */

#pragma once

#include <vector>

#include "kicktomo/metric_series.hpp"
#include "kicktomo/spin_algebra.hpp"
#include "kicktomo/types.hpp"

namespace kicktomo {

struct OrderedMeasurementPlan {
    /// Basis indices sorted by |r_a| descending, ties by index.
    std::vector<int> permutation;
    RVector true_components;
    RVector perturbed_components;
};

/// E'_a = V E_a V^dagger with V = U_r^eta.
HermitianBasis perturbed_basis(const HermitianBasis &basis, const UnitaryMatrix &ur, double eta);

OrderedMeasurementPlan measurement_plan(const Observable &rho0, const HermitianBasis &basis,
                                        const HermitianBasis &perturbed);

/**
 * F(k) = 1/d + sum_{i<=k} r'_{pi(i)} r_{pi(i)} for k = 0..d^2-1. Rejects a
 * rho0 that is not a pure state (Tr rho^2 = 1 to 1e-9).
 */
MetricSeries ideal_fidelity_curve(const Observable &rho0, const HermitianBasis &basis,
                                  const HermitianBasis &perturbed);

} // namespace kicktomo
