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
 * Value types shared by every module: spin parameters, Hermitian observables,
 * unitaries, pure states and generalized Bloch vectors.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kicktomo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Seed = std::uint64_t;

/// Raised when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Spin quantum number j stored as the integer 2j, so that half-integer
 * spins are represented exactly. Hilbert dimension is d = 2j + 1.
 */
class SpinParams {
  public:
    /// Throws PreconditionError unless j > 0 and 2j is an integer.
    static SpinParams from_j(double j);
    static SpinParams from_twice_j(int twice_j);
    /// Spin whose Hilbert dimension is d (d >= 2).
    static SpinParams from_dim(int d);

    [[nodiscard]] double j() const { return 0.5 * twice_j_; }
    [[nodiscard]] int twice_j() const { return twice_j_; }
    [[nodiscard]] int dim() const { return twice_j_ + 1; }
    /// Size of the traceless operator space, d^2 - 1.
    [[nodiscard]] int bloch_dim() const { return dim() * dim() - 1; }

    friend bool operator==(const SpinParams &, const SpinParams &) = default;

  private:
    explicit SpinParams(int twice_j) : twice_j_(twice_j) {}
    int twice_j_;
};

/**
 * Square complex Hermitian matrix. Construction checks Hermiticity against
 * a tolerance scaled by the entry magnitude and then stores the exactly
 * Hermitian part (M + M^dagger)/2.
 */
class Observable {
  public:
    Observable() = default;
    explicit Observable(CMatrix m);

    /// Skips the Hermiticity check; the caller guarantees M = M^dagger.
    static Observable trusted(CMatrix m);

    [[nodiscard]] const CMatrix &matrix() const { return m_; }
    [[nodiscard]] int dim() const { return static_cast<int>(m_.rows()); }
    /// Tr(O^2), real for Hermitian O.
    [[nodiscard]] double hs_norm_squared() const { return m_.squaredNorm(); }

  private:
    CMatrix m_;
};

/// Square complex matrix with U^dagger U = I to 1e-10 in max-norm.
class UnitaryMatrix {
  public:
    UnitaryMatrix() = default;
    explicit UnitaryMatrix(CMatrix m);
    static UnitaryMatrix trusted(CMatrix m);
    static UnitaryMatrix identity(int d);

    [[nodiscard]] const CMatrix &matrix() const { return m_; }
    [[nodiscard]] int dim() const { return static_cast<int>(m_.rows()); }
    [[nodiscard]] UnitaryMatrix adjoint() const;

  private:
    CMatrix m_;
};

/// Normalized state vector |psi>.
class PureState {
  public:
    PureState() = default;
    /// Throws PreconditionError unless the norm is 1 to 1e-10.
    explicit PureState(CVector amplitudes);
    /// Normalizes a nonzero vector.
    static PureState normalized(const CVector &v);

    [[nodiscard]] const CVector &amplitudes() const { return psi_; }
    [[nodiscard]] int dim() const { return static_cast<int>(psi_.size()); }
    /// |psi><psi| as an Observable.
    [[nodiscard]] Observable density() const;

  private:
    CVector psi_;
};

/// Real coordinates r in rho = I/d + sum_a r_a E_a.
struct BlochVector {
    RVector components;

    [[nodiscard]] Eigen::Index size() const { return components.size(); }
};

/// Max-norm of U^dagger U - I.
double unitarity_defect(const CMatrix &u);
/// Max-norm of M - M^dagger.
double hermiticity_defect(const CMatrix &m);

} // namespace kicktomo
