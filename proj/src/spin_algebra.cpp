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

#include "kicktomo/spin_algebra.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace kicktomo {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Position of the (k, l), k < l, pair in the real Hermitian coordinates.
inline int pair_offset(int d, int k, int l) {
    // Pairs are enumerated row-major over the strict upper triangle.
    const int before = k * d - k * (k + 1) / 2;
    return d + 2 * (before + (l - k - 1));
}

// Sparse storage pays off only for the mostly-zero Gell-Mann columns.
constexpr double kSparseDensity = 0.2;

} // namespace

AngularMomentum angular_momentum_ops(const SpinParams &p) {
    const int d = p.dim();
    const double j = p.j();
    CMatrix jplus = CMatrix::Zero(d, d);
    CMatrix jz = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = j - k;
        jz(k, k) = m;
        // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at row k-1.
        if (k > 0)
            jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const CMatrix jminus = jplus.adjoint();
    const Complex i(0.0, 1.0);
    CMatrix jx = 0.5 * (jplus + jminus);
    CMatrix jy = (jplus - jminus) / (2.0 * i);
    return {Observable(std::move(jx)), Observable(std::move(jy)), Observable(std::move(jz))};
}

RVector hermitian_coordinates(const CMatrix &m) {
    const int d = static_cast<int>(m.rows());
    RVector x(d * d);
    for (int k = 0; k < d; ++k)
        x(k) = m(k, k).real();
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            const int o = pair_offset(d, k, l);
            x(o) = kSqrt2 * m(k, l).real();
            x(o + 1) = kSqrt2 * m(k, l).imag();
        }
    }
    return x;
}

CMatrix from_hermitian_coordinates(const RVector &x, int d) {
    if (x.size() != static_cast<Eigen::Index>(d) * d)
        throw PreconditionError("coordinate vector length does not match dimension");
    CMatrix m(d, d);
    for (int k = 0; k < d; ++k)
        m(k, k) = x(k);
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            const int o = pair_offset(d, k, l);
            const Complex v(x(o) / kSqrt2, x(o + 1) / kSqrt2);
            m(k, l) = v;
            m(l, k) = std::conj(v);
        }
    }
    return m;
}

HermitianBasis::HermitianBasis(int d, std::vector<Observable> elements)
    : d_(d), elements_(std::move(elements)) {
    coords_.resize(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(elements_.size()));
    for (std::size_t a = 0; a < elements_.size(); ++a)
        coords_.col(static_cast<Eigen::Index>(a)) = hermitian_coordinates(elements_[a].matrix());
    const auto nnz = (coords_.array() != 0.0).count();
    if (static_cast<double>(nnz) < kSparseDensity * static_cast<double>(coords_.size()))
        sparse_coords_ = coords_.sparseView();
}

HermitianBasis HermitianBasis::gell_mann(int d) {
    if (d < 2)
        throw PreconditionError("basis dimension must be >= 2");
    std::vector<Observable> out;
    out.reserve(static_cast<std::size_t>(d) * d - 1);
    const double s = 1.0 / kSqrt2;
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            CMatrix e = CMatrix::Zero(d, d);
            e(k, l) = s;
            e(l, k) = s;
            out.push_back(Observable::trusted(std::move(e)));
        }
    }
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            CMatrix e = CMatrix::Zero(d, d);
            e(k, l) = Complex(0.0, -s);
            e(l, k) = Complex(0.0, s);
            out.push_back(Observable::trusted(std::move(e)));
        }
    }
    for (int l = 1; l < d; ++l) {
        CMatrix e = CMatrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int k = 0; k < l; ++k)
            e(k, k) = norm;
        e(l, l) = -l * norm;
        out.push_back(Observable::trusted(std::move(e)));
    }
    return HermitianBasis(d, std::move(out));
}

HermitianBasis HermitianBasis::from_elements(std::vector<Observable> elements) {
    if (elements.empty())
        throw PreconditionError("basis must be non-empty");
    const int d = elements.front().dim();
    if (static_cast<int>(elements.size()) != d * d - 1)
        throw PreconditionError("basis must have d^2 - 1 elements");
    for (const auto &e : elements) {
        if (e.dim() != d)
            throw PreconditionError("basis elements differ in dimension");
        if (std::abs(e.matrix().trace()) > 1e-10)
            throw PreconditionError("basis element is not traceless");
    }
    HermitianBasis b(d, std::move(elements));
    const RMatrix gram = b.coords_.transpose() * b.coords_;
    const double defect = (gram - RMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw PreconditionError("basis is not orthonormal");
    return b;
}

HermitianBasis HermitianBasis::permuted(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != size())
        throw PreconditionError("permutation length does not match basis size");
    std::vector<char> seen(perm.size(), 0);
    std::vector<Observable> out;
    out.reserve(perm.size());
    for (int a : perm) {
        if (a < 0 || a >= size() || seen[a])
            throw PreconditionError("not a permutation");
        seen[a] = 1;
        out.push_back(elements_[a]);
    }
    return HermitianBasis(d_, std::move(out));
}

RVector HermitianBasis::project(const CMatrix &m) const {
    const RVector x = hermitian_coordinates(m);
    if (sparse_coords_)
        return sparse_coords_->transpose() * x;
    return coords_.transpose() * x;
}

CMatrix HermitianBasis::synthesize(const RVector &c) const {
    RVector x = sparse_coords_ ? RVector(*sparse_coords_ * c) : RVector(coords_ * c);
    return from_hermitian_coordinates(x, d_);
}

HermitianBasis hermitian_basis(const SpinParams &p) { return HermitianBasis::gell_mann(p.dim()); }

BlochVector to_bloch(const Observable &rho, const HermitianBasis &basis) {
    if (rho.dim() != basis.dim())
        throw PreconditionError("density matrix and basis dimensions differ");
    return {basis.project(rho.matrix())};
}

Observable from_bloch(const BlochVector &r, const HermitianBasis &basis) {
    if (r.size() != basis.size())
        throw PreconditionError("Bloch vector length does not match basis size");
    const int d = basis.dim();
    CMatrix rho = basis.synthesize(r.components);
    rho.diagonal().array() += 1.0 / d;
    return Observable::trusted(std::move(rho));
}

PureState haar_random_state(const SpinParams &p, Seed seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(p.dim());
    for (int k = 0; k < p.dim(); ++k) {
        const double re = normal(gen);
        const double im = normal(gen);
        v(k) = Complex(re, im);
    }
    return PureState::normalized(v);
}

UnitaryMatrix haar_random_unitary(const SpinParams &p, Seed seed) {
    const int d = p.dim();
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(d, d);
    // Fill column-major so the stream order is fixed independently of Eigen internals.
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
            const double re = normal(gen);
            const double im = normal(gen);
            z(r, c) = Complex(re, im) / kSqrt2;
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix &packed = qr.matrixQR();
    for (int c = 0; c < d; ++c) {
        const Complex rcc = packed(c, c);
        const double mag = std::abs(rcc);
        if (mag > 0.0)
            q.col(c) *= rcc / mag;
    }
    return UnitaryMatrix::trusted(std::move(q));
}

CMatrix spectral_function(const Observable &h, const ScalarMap &f) {
    const CMatrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigensolver failed");
    const RVector &w = es.eigenvalues();
    CVector fw(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k)
        fw(k) = f(w(k));
    const CMatrix &v = es.eigenvectors();
    return v * fw.asDiagonal() * v.adjoint();
}

namespace {

struct UnitarySchur {
    CMatrix q;
    RVector phases;
};

UnitarySchur unitary_schur(const UnitaryMatrix &u) {
    // For a normal matrix the complex Schur form is diagonal.
    Eigen::ComplexSchur<CMatrix> schur(u.matrix());
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("complex Schur decomposition failed");
    const CMatrix &t = schur.matrixT();
    RVector phases(t.rows());
    for (Eigen::Index k = 0; k < t.rows(); ++k) {
        double th = std::arg(t(k, k));
        if (th <= -std::numbers::pi)
            th = std::numbers::pi;
        phases(k) = th;
    }
    return {schur.matrixU(), std::move(phases)};
}

} // namespace

RVector eigenphases(const UnitaryMatrix &u) { return unitary_schur(u).phases; }

UnitaryMatrix unitary_fractional_power(const UnitaryMatrix &u, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw PreconditionError("fractional power eta must lie in [0, 1]");
    if (unitarity_defect(u.matrix()) > 1e-8)
        throw PreconditionError("fractional power requires a unitary input");
    const UnitarySchur s = unitary_schur(u);
    CVector diag(s.phases.size());
    for (Eigen::Index k = 0; k < s.phases.size(); ++k)
        diag(k) = std::polar(1.0, eta * s.phases(k));
    return UnitaryMatrix::trusted(s.q * diag.asDiagonal() * s.q.adjoint());
}

double frobenius_distance_to_identity(const UnitaryMatrix &u) {
    return (u.matrix() - CMatrix::Identity(u.dim(), u.dim())).norm();
}

} // namespace kicktomo
