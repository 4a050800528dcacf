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

#include "kicktomo/chaos_metrics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "kicktomo/kernels.hpp"

namespace kicktomo {

namespace {

void require_same_length(const OperatorTrajectory &a, const OperatorTrajectory &b) {
    if (a.n_steps() != b.n_steps())
        throw PreconditionError("trajectories differ in length");
    if (a.initial().dim() != b.initial().dim())
        throw PreconditionError("trajectories differ in dimension");
}

MetricSeries make_series(Metric m, std::vector<double> values) {
    MetricSeries s;
    s.metric = m;
    s.times.resize(values.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        s.times[k] = static_cast<int>(k);
    s.values = std::move(values);
    return s;
}

RVector floored(const RVector &p, double floor) {
    RVector q = p.cwiseMax(floor);
    return q / q.sum();
}

} // namespace

RegularizedOperator regularize(const Observable &o) {
    const CMatrix sym = 0.5 * (o.matrix() + o.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed in regularize");
    const RVector mag = es.eigenvalues().cwiseAbs();
    const double total = mag.sum();
    if (!(total > 0.0))
        throw PreconditionError("cannot regularize the zero operator");
    RegularizedOperator r;
    r.weights_ = mag / total;
    r.vectors_ = es.eigenvectors();
    r.matrix_ = r.vectors_ * r.weights_.cast<Complex>().asDiagonal() * r.vectors_.adjoint();
    return r;
}

double relative_entropy(const RegularizedOperator &a, const RegularizedOperator &b, double floor) {
    if (a.matrix().rows() != b.matrix().rows())
        throw PreconditionError("regularized operators differ in dimension");
    if (!(floor > 0.0))
        throw PreconditionError("entropy floor must be positive");
    const RVector p = floored(a.eigenvalues(), floor);
    const RVector q = floored(b.eigenvalues(), floor);
    // overlap(i, k) = |<a_i|b_k>|^2
    const RMatrix overlap = (a.eigenvectors().adjoint() * b.eigenvectors()).cwiseAbs2();
    const RVector log_p = p.array().log();
    const RVector log_q = q.array().log();
    return p.dot(log_p) - p.dot(overlap * log_q);
}

MetricSeries loschmidt_echo(const OperatorTrajectory &traj_true, const OperatorTrajectory &traj_ideal) {
    require_same_length(traj_true, traj_ideal);
    const double norm = traj_true.initial().hs_norm_squared();
    if (!(norm > 0.0))
        throw PreconditionError("Loschmidt echo needs a nonzero initial observable");
    auto values = omp::pairwise_series(traj_true, traj_ideal, [norm](const Observable &a, const Observable &b) {
        // Both operators have Hilbert-Schmidt norm^2 equal to `norm`, so
        // Tr(A B) = norm - |A - B|^2 / 2. The difference form is exact for
        // identical trajectories, where the overlap form drifts with rounding.
        return 1.0 - (a.matrix() - b.matrix()).squaredNorm() / (2.0 * norm);
    });
    return make_series(Metric::loschmidt, std::move(values));
}

MetricSeries relative_entropy_series(const OperatorTrajectory &traj_true,
                                     const OperatorTrajectory &traj_ideal, double floor) {
    require_same_length(traj_true, traj_ideal);
    auto values = omp::pairwise_series(traj_true, traj_ideal, [floor](const Observable &a, const Observable &b) {
        return relative_entropy(regularize(a), regularize(b), floor);
    });
    return make_series(Metric::rel_entropy, std::move(values));
}

double commutator_incompatibility(const Observable &a, const Observable &b, double j) {
    if (a.dim() != b.dim())
        throw PreconditionError("operators differ in dimension");
    const CMatrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    return c.squaredNorm() / (2.0 * std::pow(j, 4));
}

MetricSeries operator_incompatibility(const OperatorTrajectory &traj_true,
                                      const OperatorTrajectory &traj_ideal, double j) {
    require_same_length(traj_true, traj_ideal);
    if (!(j > 0.0))
        throw PreconditionError("spin j must be positive");
    auto values = omp::pairwise_series(traj_true, traj_ideal, [j](const Observable &a, const Observable &b) {
        return commutator_incompatibility(a, b, j);
    });
    return make_series(Metric::otoc, std::move(values));
}

double incompatibility_otoc_form(const Observable &o, const FloquetPair &pair, int n, double j) {
    const UnitaryMatrix e = error_unitary(pair, n);
    const CMatrix conj = e.matrix().adjoint() * o.matrix() * e.matrix();
    return commutator_incompatibility(o, Observable::trusted(0.5 * (conj + conj.adjoint())), j);
}

} // namespace kicktomo
