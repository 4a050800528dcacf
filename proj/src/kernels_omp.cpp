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

#include <exception>

#include <omp.h>

#include "ensemble_detail.hpp"

namespace kicktomo::omp {

namespace {

// Exceptions must not escape an OpenMP region; keep the first one and rethrow.
class ErrorSlot {
  public:
    template <typename F> void run(F &&f) {
        try {
            f();
        } catch (...) {
#pragma omp critical(kicktomo_error_slot)
            if (!error_)
                error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_)
            std::rethrow_exception(error_);
    }

  private:
    std::exception_ptr error_;
};

} // namespace

int max_threads() { return omp_get_max_threads(); }

EnsembleFidelity ensemble_fidelity(const EnsembleProblem &problem) {
    const DesignMatrix full = detail::validate_and_design(problem);
    const int n_states = static_cast<int>(problem.states.size());
    EnsembleFidelity out;
    out.per_state.resize(n_states, problem.n_steps);
    ErrorSlot errors;
    for (int n = 1; n <= problem.n_steps; ++n) {
        const detail::StepSystem sys = detail::step_system(full, n, problem.rcond);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n_states; ++i)
            errors.run([&] { out.per_state(i, n - 1) = detail::reconstruct_fidelity(sys, problem, i, n); });
        errors.rethrow();
    }
    detail::summarize(out);
    return out;
}

std::vector<double> pairwise_series(const OperatorTrajectory &a, const OperatorTrajectory &b,
                                    const PairMetric &f) {
    if (a.n_steps() != b.n_steps())
        throw PreconditionError("trajectories differ in length");
    const int n = a.n_steps();
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    ErrorSlot errors;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k <= n; ++k)
        errors.run([&] { out[static_cast<std::size_t>(k)] = f(a[k], b[k]); });
    errors.rethrow();
    return out;
}

} // namespace kicktomo::omp
