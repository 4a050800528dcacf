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

#include "kicktomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace kicktomo {

MeasurementRecord MeasurementRecord::prefix(int n) const {
    if (n < 0 || n > size())
        throw PreconditionError("record prefix out of range");
    return {values.head(n), noise_sigma};
}

namespace {

// Tr(A B) for Hermitian A, B.
double trace_product(const CMatrix &a, const CMatrix &b) {
    return a.cwiseProduct(b.transpose()).sum().real();
}

} // namespace

MeasurementRecord simulate_record(const Observable &rho0, const OperatorTrajectory &traj,
                                  double sigma, Seed seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw PreconditionError("noise sigma must be finite and non-negative");
    if (rho0.dim() != traj.initial().dim())
        throw PreconditionError("state and trajectory dimensions differ");
    const auto ops = traj.measured();
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    MeasurementRecord rec;
    rec.noise_sigma = sigma;
    rec.values.resize(static_cast<Eigen::Index>(ops.size()));
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const double w = normal(gen);
        rec.values(static_cast<Eigen::Index>(k)) = trace_product(ops[k].matrix(), rho0.matrix()) + sigma * w;
    }
    return rec;
}

DesignMatrix design_matrix(std::span<const Observable> operators, const HermitianBasis &basis) {
    RMatrix x(static_cast<Eigen::Index>(operators.size()), basis.size());
    for (std::size_t n = 0; n < operators.size(); ++n) {
        if (operators[n].dim() != basis.dim())
            throw PreconditionError("operator and basis dimensions differ");
        x.row(static_cast<Eigen::Index>(n)) = basis.project(operators[n].matrix()).transpose();
    }
    return {std::move(x)};
}

CovarianceMatrix covariance(const DesignMatrix &design, double rcond) {
    if (!(rcond > 0.0))
        throw PreconditionError("rcond must be positive");
    const RMatrix &x = design.entries;
    const Eigen::Index rows = x.rows();
    const Eigen::Index cols = x.cols();
    CovarianceMatrix out;
    out.entries = RMatrix::Zero(cols, cols);
    if (rows == 0 || cols == 0)
        return out;

    if (rows < cols) {
        // Short design: decompose the row Gram X X^T, which shares the nonzero
        // spectrum of X^T X. Then (X^T X)^+ = X^T U L^-2 U^T X.
        RMatrix g = x * x.transpose();
        g = 0.5 * (g + g.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigensolver failed in covariance");
        const RVector &w = es.eigenvalues();
        out.max_eigenvalue = std::max(0.0, w(w.size() - 1));
        if (out.max_eigenvalue <= 0.0)
            return out;
        const double cut = rcond * out.max_eigenvalue;
        RMatrix factor(cols, rows);
        int rank = 0;
        for (Eigen::Index k = w.size() - 1; k >= 0 && w(k) > cut; --k) {
            factor.col(rank) = x.transpose() * es.eigenvectors().col(k) / w(k);
            ++rank;
        }
        out.rank = rank;
        const auto f = factor.leftCols(rank);
        out.entries.noalias() = f * f.transpose();
    } else {
        RMatrix a = x.transpose() * x;
        a = 0.5 * (a + a.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigensolver failed in covariance");
        const RVector &w = es.eigenvalues();
        out.max_eigenvalue = std::max(0.0, w(w.size() - 1));
        if (out.max_eigenvalue <= 0.0)
            return out;
        const double cut = rcond * out.max_eigenvalue;
        RMatrix factor(cols, cols);
        int rank = 0;
        for (Eigen::Index k = w.size() - 1; k >= 0 && w(k) > cut; --k) {
            factor.col(rank) = es.eigenvectors().col(k) / std::sqrt(w(k));
            ++rank;
        }
        out.rank = rank;
        const auto f = factor.leftCols(rank);
        out.entries.noalias() = f * f.transpose();
    }
    out.entries = 0.5 * (out.entries + out.entries.transpose()).eval();
    return out;
}

BlochVector ml_estimate(const CovarianceMatrix &c, const DesignMatrix &design,
                        const MeasurementRecord &record) {
    if (design.entries.rows() != record.values.size())
        throw PreconditionError("record length does not match design rows");
    if (c.entries.rows() != design.entries.cols())
        throw PreconditionError("covariance size does not match design columns");
    const RVector b = design.entries.transpose() * record.values;
    return {c.entries * b};
}

double projection_objective(const RVector &r, const RVector &r_ml, const RMatrix &weight) {
    const RVector diff = r - r_ml;
    return diff.dot(weight * diff);
}

namespace {

// Euclidean projection of v onto {p >= 0, sum p = 1}.
RVector project_to_simplex(const RVector &v) {
    RVector u = v;
    std::sort(u.data(), u.data() + u.size(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        cumsum += u(k);
        const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (u(k) - t > 0.0)
            theta = t;
    }
    return (v.array() - theta).max(0.0).matrix();
}

double min_eigenvalue(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed");
    return es.eigenvalues()(0);
}

// Applies v -> W v for the quadratic weight, either densely or as X^T (X v).
class WeightOperator {
  public:
    static WeightOperator dense(const RMatrix &w) { return WeightOperator(&w, nullptr); }
    static WeightOperator factored(const RMatrix &x) { return WeightOperator(nullptr, &x); }

    [[nodiscard]] RVector apply(const RVector &v) const {
        if (dense_)
            return *dense_ * v;
        const RVector xv = *factor_ * v;
        return factor_->transpose() * xv;
    }

    [[nodiscard]] double largest_eigenvalue() const {
        if (dense_) {
            Eigen::SelfAdjointEigenSolver<RMatrix> es(*dense_, Eigen::EigenvaluesOnly);
            return std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1));
        }
        const RMatrix g = *factor_ * factor_->transpose();
        Eigen::SelfAdjointEigenSolver<RMatrix> es(g, Eigen::EigenvaluesOnly);
        return g.size() == 0 ? 0.0 : std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1));
    }

  private:
    WeightOperator(const RMatrix *d, const RMatrix *f) : dense_(d), factor_(f) {}
    const RMatrix *dense_;
    const RMatrix *factor_;
};

PsdProjection finish(RVector r, double objective, int iterations, const HermitianBasis &basis) {
    PsdProjection out;
    out.r_bar = {std::move(r)};
    out.rho_bar = from_bloch(out.r_bar, basis);
    out.objective = objective;
    out.iterations = iterations;
    return out;
}

PsdProjection accelerated_projection(const RVector &r_ml, const WeightOperator &w,
                                     const HermitianBasis &basis, const ProjectionOptions &opts) {
    if (r_ml.size() != basis.size())
        throw PreconditionError("Bloch vector length does not match basis size");
    if (!(opts.tol > 0.0) || opts.max_iterations < 1)
        throw PreconditionError("projection tolerance and iteration cap must be positive");

    CMatrix rho_ml = basis.synthesize(r_ml);
    rho_ml.diagonal().array() += 1.0 / basis.dim();
    if (min_eigenvalue(rho_ml) >= 0.0)
        return finish(r_ml, 0.0, 0, basis);

    // W is applied once per iteration: the gradient W (y - r_ml) at the
    // extrapolated point is a combination of stored W (x - r_ml) products.
    const auto residual = [&](const RVector &x) { return w.apply(x - r_ml); };

    const double lipschitz = opts.lipschitz.value_or(w.largest_eigenvalue());
    RVector x = project_to_states({r_ml}, basis).components;
    RVector gx = residual(x);
    double fx = (x - r_ml).dot(gx);
    if (!(lipschitz > 0.0))
        return finish(std::move(x), fx, 0, basis);

    const double step = 1.0 / lipschitz;
    const double floor = 1e-14 * lipschitz;
    RVector y = x;
    RVector gy = gx;
    double t = 1.0;
    int calm = 0;
    RVector best = x;
    double fbest = fx;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        RVector xn = project_to_states({y - step * gy}, basis).components;
        RVector gxn = residual(xn);
        const double fn = (xn - r_ml).dot(gxn);

        if ((y - xn).dot(xn - x) > 0.0) {
            // Momentum points uphill: restart from the new iterate.
            t = 1.0;
            y = xn;
            gy = gxn;
        } else {
            const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double beta = (t - 1.0) / tn;
            y = xn + beta * (xn - x);
            gy = gxn + beta * (gxn - gx);
            t = tn;
        }
        if (fn < fbest) {
            fbest = fn;
            best = xn;
        }
        // The floor is absolute: a noiseless, consistent record has optimum 0,
        // where no relative test can pass.
        const bool small = std::abs(fn - fx) <= std::max(opts.tol * fx, floor);
        calm = small ? calm + 1 : 0;
        x = std::move(xn);
        gx = std::move(gxn);
        fx = fn;
        if (calm >= 2)
            return finish(std::move(best), fbest, it, basis);
    }
    throw ConvergenceError("PSD projection did not converge",
                           finish(std::move(best), fbest, opts.max_iterations, basis));
}

} // namespace

BlochVector project_to_states(const BlochVector &r, const HermitianBasis &basis) {
    CMatrix rho = basis.synthesize(r.components);
    rho.diagonal().array() += 1.0 / basis.dim();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed in state projection");
    const RVector p = project_to_simplex(es.eigenvalues());
    const CMatrix &v = es.eigenvectors();
    const CMatrix projected = v * p.cast<Complex>().asDiagonal() * v.adjoint();
    return {basis.project(projected)};
}

PsdProjection psd_project(const BlochVector &r_ml, const RMatrix &weight,
                          const HermitianBasis &basis, const ProjectionOptions &opts) {
    if (weight.rows() != r_ml.size() || weight.cols() != r_ml.size())
        throw PreconditionError("weight matrix size does not match Bloch vector");
    return accelerated_projection(r_ml.components, WeightOperator::dense(weight), basis, opts);
}

PsdProjection psd_project(const BlochVector &r_ml, const DesignMatrix &design,
                          const HermitianBasis &basis, const ProjectionOptions &opts) {
    if (design.entries.cols() != r_ml.size())
        throw PreconditionError("design columns do not match Bloch vector");
    if (design.entries.rows() < design.entries.cols())
        return accelerated_projection(r_ml.components, WeightOperator::factored(design.entries), basis,
                                      opts);
    const RMatrix gram = design.entries.transpose() * design.entries;
    return accelerated_projection(r_ml.components, WeightOperator::dense(gram), basis, opts);
}

TomographyEstimate reconstruct(const MeasurementRecord &record,
                               const OperatorTrajectory &experimenter_traj,
                               const HermitianBasis &basis, double rcond, double tol) {
    const auto measured = experimenter_traj.measured();
    if (static_cast<int>(measured.size()) < record.size())
        throw PreconditionError("experimenter trajectory is shorter than the record");
    const DesignMatrix design =
        design_matrix(measured.first(static_cast<std::size_t>(record.size())), basis);
    const CovarianceMatrix c = covariance(design, rcond);
    TomographyEstimate est;
    est.rank = c.rank;
    est.r_ml = ml_estimate(c, design, record);

    ProjectionOptions opts;
    opts.tol = tol;
    opts.lipschitz = c.max_eigenvalue;
    PsdProjection proj = psd_project(est.r_ml, design, basis, opts);
    est.r_bar = std::move(proj.r_bar);
    est.rho_bar = std::move(proj.rho_bar);
    est.projection_iterations = proj.iterations;
    return est;
}

double fidelity(const PureState &psi, const Observable &rho) {
    if (psi.dim() != rho.dim())
        throw PreconditionError("state and density matrix dimensions differ");
    const CVector &v = psi.amplitudes();
    return v.dot(rho.matrix() * v).real();
}

double reported_fidelity(const PureState &psi, const Observable &rho) {
    return std::clamp(fidelity(psi, rho), 0.0, 1.0);
}

} // namespace kicktomo
