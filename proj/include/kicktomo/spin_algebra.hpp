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
 * Spin-j operators, orthonormal traceless Hermitian bases, Bloch-vector
 * mapping, Hermitian matrix functions and Haar sampling.
 *
 * All matrices are written in the J_z eigenbasis ordered m = j, j-1, ..., -j.
 */

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "kicktomo/types.hpp"

namespace kicktomo {

struct AngularMomentum {
    Observable jx;
    Observable jy;
    Observable jz;
};

/// Spin-j matrices built from the ladder operators.
AngularMomentum angular_momentum_ops(const SpinParams &p);

/**
 * Ordered orthonormal basis {E_a} of the traceless Hermitian d x d matrices,
 * Tr(E_a E_b) = delta_ab.
 *
 * Besides the matrices themselves the basis keeps a real d^2 x (d^2-1)
 * coordinate matrix whose column a holds E_a in real Hermitian coordinates
 * (diagonal entries, then sqrt(2) Re and sqrt(2) Im of the upper triangle).
 * In these coordinates the Hilbert-Schmidt inner product is the Euclidean
 * one, so Bloch maps are plain (often sparse) matrix-vector products.
 */
class HermitianBasis {
  public:
    /// Generalized Gell-Mann basis: symmetric (k<l), antisymmetric (k<l),
    /// then diagonal generators l = 1..d-1.
    static HermitianBasis gell_mann(int d);

    /// Validates tracelessness and orthonormality to 1e-10.
    static HermitianBasis from_elements(std::vector<Observable> elements);

    [[nodiscard]] int dim() const { return d_; }
    [[nodiscard]] int size() const { return static_cast<int>(elements_.size()); }
    [[nodiscard]] const Observable &operator[](int a) const { return elements_[a]; }
    [[nodiscard]] const std::vector<Observable> &elements() const { return elements_; }

    /// Column a is E_a in real Hermitian coordinates.
    [[nodiscard]] const RMatrix &coordinates() const { return coords_; }

    /// Basis reordered so that element k is the old element perm[k].
    [[nodiscard]] HermitianBasis permuted(std::span<const int> perm) const;

    /// r_a = Tr(M E_a) for Hermitian M.
    [[nodiscard]] RVector project(const CMatrix &m) const;
    /// sum_a c_a E_a.
    [[nodiscard]] CMatrix synthesize(const RVector &c) const;

  private:
    HermitianBasis(int d, std::vector<Observable> elements);

    int d_ = 0;
    std::vector<Observable> elements_;
    RMatrix coords_;
    std::optional<Eigen::SparseMatrix<double>> sparse_coords_;
};

HermitianBasis hermitian_basis(const SpinParams &p);

/// Real Hermitian coordinates of a d x d Hermitian matrix (length d^2).
RVector hermitian_coordinates(const CMatrix &m);
/// Inverse of hermitian_coordinates.
CMatrix from_hermitian_coordinates(const RVector &x, int d);

/// r_a = Tr(rho E_a). Throws PreconditionError on dimension mismatch.
BlochVector to_bloch(const Observable &rho, const HermitianBasis &basis);
/// I/d + sum_a r_a E_a; the result need not be positive.
Observable from_bloch(const BlochVector &r, const HermitianBasis &basis);

PureState haar_random_state(const SpinParams &p, Seed seed);
/// Haar unitary from the QR decomposition of a complex Ginibre matrix with
/// the phases of diag(R) divided out.
UnitaryMatrix haar_random_unitary(const SpinParams &p, Seed seed);

using ScalarMap = std::function<Complex(double)>;

/**
 * V f(D) V^dagger for the eigendecomposition H = V D V^dagger. H is
 * symmetrized before decomposing. Throws std::runtime_error if the
 * eigensolver fails.
 */
CMatrix spectral_function(const Observable &h, const ScalarMap &f);

/// Eigenphases of a unitary on the principal branch (-pi, pi].
RVector eigenphases(const UnitaryMatrix &u);

/// U^eta with every eigenphase theta mapped to eta * theta on (-pi, pi].
UnitaryMatrix unitary_fractional_power(const UnitaryMatrix &u, double eta);

/// ||U - I||_F.
double frobenius_distance_to_identity(const UnitaryMatrix &u);

} // namespace kicktomo
