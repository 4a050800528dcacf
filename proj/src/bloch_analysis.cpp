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

#include "kicktomo/bloch_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kicktomo {

HermitianBasis perturbed_basis(const HermitianBasis &basis, const UnitaryMatrix &ur, double eta) {
    if (ur.dim() != basis.dim())
        throw PreconditionError("unitary and basis dimensions differ");
    const UnitaryMatrix v = unitary_fractional_power(ur, eta);
    const CMatrix &vm = v.matrix();
    std::vector<Observable> out;
    out.reserve(basis.elements().size());
    for (const auto &e : basis.elements()) {
        CMatrix m = vm * e.matrix() * vm.adjoint();
        out.push_back(Observable(std::move(m)));
    }
    return HermitianBasis::from_elements(std::move(out));
}

OrderedMeasurementPlan measurement_plan(const Observable &rho0, const HermitianBasis &basis,
                                        const HermitianBasis &perturbed) {
    if (basis.size() != perturbed.size() || basis.dim() != perturbed.dim())
        throw PreconditionError("bases differ in size");
    OrderedMeasurementPlan plan;
    plan.true_components = to_bloch(rho0, basis).components;
    plan.perturbed_components = to_bloch(rho0, perturbed).components;
    plan.permutation.resize(static_cast<std::size_t>(basis.size()));
    std::iota(plan.permutation.begin(), plan.permutation.end(), 0);
    const RVector &r = plan.true_components;
    std::stable_sort(plan.permutation.begin(), plan.permutation.end(),
                     [&r](int a, int b) { return std::abs(r(a)) > std::abs(r(b)); });
    return plan;
}

MetricSeries ideal_fidelity_curve(const Observable &rho0, const HermitianBasis &basis,
                                  const HermitianBasis &perturbed) {
    const double trace = rho0.matrix().trace().real();
    const double purity = rho0.hs_norm_squared();
    if (std::abs(trace - 1.0) > 1e-9 || std::abs(purity - 1.0) > 1e-9)
        throw PreconditionError("ideal fidelity curve requires a pure state");
    const OrderedMeasurementPlan plan = measurement_plan(rho0, basis, perturbed);
    MetricSeries s;
    s.metric = Metric::fidelity;
    const int n = basis.size();
    s.times.resize(static_cast<std::size_t>(n) + 1);
    s.values.resize(static_cast<std::size_t>(n) + 1);
    double f = 1.0 / basis.dim();
    s.times[0] = 0;
    s.values[0] = f;
    for (int k = 1; k <= n; ++k) {
        const int a = plan.permutation[static_cast<std::size_t>(k - 1)];
        f += plan.perturbed_components(a) * plan.true_components(a);
        s.times[static_cast<std::size_t>(k)] = k;
        s.values[static_cast<std::size_t>(k)] = f;
    }
    return s;
}

} // namespace kicktomo
