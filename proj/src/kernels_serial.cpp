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

// Reference implementations: straight loops, no threading.

#include "ensemble_detail.hpp"

namespace kicktomo::serial {

EnsembleFidelity ensemble_fidelity(const EnsembleProblem &problem) {
    const DesignMatrix full = detail::validate_and_design(problem);
    const int n_states = static_cast<int>(problem.states.size());
    EnsembleFidelity out;
    out.per_state.resize(n_states, problem.n_steps);
    for (int n = 1; n <= problem.n_steps; ++n) {
        const detail::StepSystem sys = detail::step_system(full, n, problem.rcond);
        for (int i = 0; i < n_states; ++i)
            out.per_state(i, n - 1) = detail::reconstruct_fidelity(sys, problem, i, n);
    }
    detail::summarize(out);
    return out;
}

std::vector<double> pairwise_series(const OperatorTrajectory &a, const OperatorTrajectory &b,
                                    const PairMetric &f) {
    if (a.n_steps() != b.n_steps())
        throw PreconditionError("trajectories differ in length");
    std::vector<double> out(static_cast<std::size_t>(a.n_steps()) + 1);
    for (int k = 0; k <= a.n_steps(); ++k)
        out[static_cast<std::size_t>(k)] = f(a[k], b[k]);
    return out;
}

} // namespace kicktomo::serial
