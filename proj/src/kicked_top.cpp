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

#include "kicktomo/kicked_top.hpp"

#include <cmath>

#include "kicktomo/spin_algebra.hpp"

namespace kicktomo {

OperatorTrajectory::OperatorTrajectory(std::vector<Observable> steps) : steps_(std::move(steps)) {
    if (steps_.empty())
        throw PreconditionError("trajectory needs at least the initial observable");
    const int d = steps_.front().dim();
    for (const auto &o : steps_)
        if (o.dim() != d)
            throw PreconditionError("trajectory observables differ in dimension");
}

UnitaryMatrix floquet_map(const KickedTopParams &p, bool use_perturbed) {
    if (!std::isfinite(p.lambda) || !std::isfinite(p.alpha) || !std::isfinite(p.delta_lambda))
        throw PreconditionError("kicked-top parameters must be finite");
    const double lambda = use_perturbed ? p.lambda + p.delta_lambda : p.lambda;
    const double j = p.spin.j();
    const int d = p.spin.dim();
    const auto ops = angular_momentum_ops(p.spin);
    const double alpha = p.alpha;
    const CMatrix rotation =
        spectral_function(ops.jx, [alpha](double x) { return std::polar(1.0, -alpha * x); });
    // The kick is diagonal in the Jz basis, so it scales rows of the rotation.
    CMatrix u = rotation;
    for (int k = 0; k < d; ++k) {
        const double m = j - k;
        u.row(k) *= std::polar(1.0, -lambda * m * m / (2.0 * j));
    }
    return UnitaryMatrix(std::move(u));
}

FloquetPair floquet_pair(const KickedTopParams &p) {
    return {floquet_map(p, false), floquet_map(p, true)};
}

Observable initial_observable(const SpinParams &p, const UnitaryMatrix &v) {
    if (v.dim() != p.dim())
        throw PreconditionError("rotation dimension does not match spin");
    const auto ops = angular_momentum_ops(p);
    CMatrix o = v.matrix() * ops.jx.matrix() * v.matrix().adjoint();
    return Observable(std::move(o));
}

Observable initial_observable(const SpinParams &p, Seed seed) {
    return initial_observable(p, haar_random_unitary(p, seed));
}

OperatorTrajectory operator_trajectory(const Observable &o, const UnitaryMatrix &u, int n_steps) {
    if (n_steps < 0)
        throw PreconditionError("n_steps must be non-negative");
    if (o.dim() != u.dim())
        throw PreconditionError("observable and unitary dimensions differ");
    std::vector<Observable> steps;
    steps.reserve(static_cast<std::size_t>(n_steps) + 1);
    steps.push_back(o);
    const CMatrix &um = u.matrix();
    const CMatrix udag = um.adjoint();
    CMatrix tmp(o.dim(), o.dim());
    for (int k = 0; k < n_steps; ++k) {
        tmp.noalias() = udag * steps.back().matrix();
        CMatrix next = tmp * um;
        // Re-Hermitize so roundoff does not accumulate an anti-Hermitian part.
        next = 0.5 * (next + next.adjoint()).eval();
        steps.push_back(Observable::trusted(std::move(next)));
    }
    return OperatorTrajectory(std::move(steps));
}

UnitaryMatrix error_unitary(const FloquetPair &pair, int n) {
    if (n < 0)
        throw PreconditionError("error unitary step must be non-negative");
    const int d = pair.ideal.dim();
    CMatrix ideal_n = CMatrix::Identity(d, d);
    CMatrix true_n = CMatrix::Identity(d, d);
    for (int k = 0; k < n; ++k) {
        ideal_n = (pair.ideal.matrix() * ideal_n).eval();
        true_n = (pair.true_perturbed.matrix() * true_n).eval();
    }
    return UnitaryMatrix(ideal_n * true_n.adjoint());
}

} // namespace kicktomo
