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
 * Continuous-measurement tomography: noisy expectation-value records, the
 * linear design matrix, the pseudoinverse least-squares estimate and the
 * projection onto physical density matrices.
 */

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kicktomo/kicked_top.hpp"
#include "kicktomo/metric_series.hpp"
#include "kicktomo/spin_algebra.hpp"
#include "kicktomo/types.hpp"

namespace kicktomo {

/// M_k = Tr(O_k rho0) + w_k for k = 1..n.
struct MeasurementRecord {
    RVector values;
    double noise_sigma = 0.0;

    [[nodiscard]] int size() const { return static_cast<int>(values.size()); }
    /// First n entries.
    [[nodiscard]] MeasurementRecord prefix(int n) const;
};

/// Rows are measured operators, columns basis elements: entry (n, a) = Tr(O_n E_a).
struct DesignMatrix {
    RMatrix entries;
};

/// Moore-Penrose pseudoinverse of the Gram matrix O~^T O~.
struct CovarianceMatrix {
    RMatrix entries;
    int rank = 0;
    /// Largest eigenvalue of O~^T O~ (0 for an all-zero design).
    double max_eigenvalue = 0.0;
    /// Set when every eigenvalue fell below the cutoff.
    [[nodiscard]] bool degenerate() const { return rank == 0; }
};

struct TomographyEstimate {
    BlochVector r_ml;
    BlochVector r_bar;
    Observable rho_bar;
    int rank = 0;
    int projection_iterations = 0;
};

struct ProjectionOptions {
    double tol = 1e-8;
    int max_iterations = 10000;
    /// Largest eigenvalue of the weight matrix, if the caller already knows it.
    std::optional<double> lipschitz;
};

struct PsdProjection {
    BlochVector r_bar;
    Observable rho_bar;
    double objective = 0.0;
    int iterations = 0;
};

/// The projection hit its iteration cap; carries the best feasible iterate.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string &what, PsdProjection best)
        : std::runtime_error(what), best_(std::move(best)) {}
    [[nodiscard]] const PsdProjection &best() const { return best_; }

  private:
    PsdProjection best_;
};

/// Uses trajectory steps 1..n; the noise is i.i.d. N(0, sigma^2) from seed.
MeasurementRecord simulate_record(const Observable &rho0, const OperatorTrajectory &traj,
                                  double sigma, Seed seed);

DesignMatrix design_matrix(std::span<const Observable> operators, const HermitianBasis &basis);

/// Inverts eigenvalues of O~^T O~ above rcond * (largest eigenvalue).
CovarianceMatrix covariance(const DesignMatrix &design, double rcond = 1e-10);

/// r_ML = C O~^T M.
BlochVector ml_estimate(const CovarianceMatrix &c, const DesignMatrix &design,
                        const MeasurementRecord &record);

/// (r - r_ml)^T W (r - r_ml).
double projection_objective(const RVector &r, const RVector &r_ml, const RMatrix &weight);

/// Euclidean projection onto {rho >= 0, Tr rho = 1} written in Bloch coordinates.
BlochVector project_to_states(const BlochVector &r, const HermitianBasis &basis);

/**
 * Minimizes (r_ml - r)^T W (r_ml - r) over Bloch vectors of positive
 * semidefinite density matrices, with W = O~^T O~ (possibly singular).
 *
 * Accelerated projected gradient with gradient-based restart; the step is
 * 1 / lambda_max(W) and the projection clips the spectrum of rho onto the
 * probability simplex. Stops once the relative objective change stays
 * below tol (or the absolute change below 1e-14 lambda_max) for two
 * consecutive iterations. Throws ConvergenceError after max_iterations.
 */
PsdProjection psd_project(const BlochVector &r_ml, const RMatrix &weight,
                          const HermitianBasis &basis, const ProjectionOptions &opts = {});

/// Same problem with W = X^T X applied as X^T (X v); cheaper when the
/// design has fewer rows than columns.
PsdProjection psd_project(const BlochVector &r_ml, const DesignMatrix &design,
                          const HermitianBasis &basis, const ProjectionOptions &opts = {});

/// design_matrix -> covariance -> ml_estimate -> psd_project using only the
/// experimenter's operators (the first record.size() measured steps).
TomographyEstimate reconstruct(const MeasurementRecord &record,
                               const OperatorTrajectory &experimenter_traj,
                               const HermitianBasis &basis, double rcond = 1e-10,
                               double tol = 1e-8);

struct EnsembleOptions {
    double noise_sigma = 0.1;
    /// One noise stream per state, same order as the states.
    std::vector<Seed> noise_seeds;
    int n_steps = 0;
    double rcond = 1e-10;
    double tol = 1e-8;
};

/**
 * Mean reconstruction fidelity over an ensemble of states. Records come
 * from true_traj; every state is reconstructed with experimenter_traj after
 * each of steps 1..n_steps. The series carries the per-step standard error.
 */
MetricSeries ensemble_average_fidelity(std::span<const PureState> states,
                                       const OperatorTrajectory &true_traj,
                                       const OperatorTrajectory &experimenter_traj,
                                       const HermitianBasis &basis, const EnsembleOptions &opts);

/// <psi|rho|psi>, unclamped.
double fidelity(const PureState &psi, const Observable &rho);
/// fidelity clamped to [0, 1] for reporting.
double reported_fidelity(const PureState &psi, const Observable &rho);

} // namespace kicktomo
