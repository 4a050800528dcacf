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

#include "kicktomo/types.hpp"

#include <cmath>

namespace kicktomo {

namespace {
constexpr double kHermitianTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kNormTol = 1e-10;
} // namespace

SpinParams SpinParams::from_j(double j) {
    if (!std::isfinite(j) || j <= 0.0)
        throw PreconditionError("spin j must be positive, got " + std::to_string(j));
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-12)
        throw PreconditionError("2j must be an integer, got j = " + std::to_string(j));
    return SpinParams(static_cast<int>(rounded));
}

SpinParams SpinParams::from_twice_j(int twice_j) {
    if (twice_j <= 0)
        throw PreconditionError("2j must be a positive integer, got " + std::to_string(twice_j));
    return SpinParams(twice_j);
}

SpinParams SpinParams::from_dim(int d) {
    if (d < 2)
        throw PreconditionError("Hilbert dimension must be >= 2, got " + std::to_string(d));
    return SpinParams(d - 1);
}

double hermiticity_defect(const CMatrix &m) {
    if (m.size() == 0)
        return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix &u) {
    if (u.size() == 0)
        return 0.0;
    const CMatrix gram = u.adjoint() * u;
    return (gram - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

Observable::Observable(CMatrix m) {
    if (m.rows() != m.cols())
        throw PreconditionError("observable must be square");
    const double scale = m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermiticity_defect(m) > kHermitianTol * scale)
        throw PreconditionError("observable is not Hermitian");
    m_ = 0.5 * (m + m.adjoint());
}

Observable Observable::trusted(CMatrix m) {
    Observable o;
    o.m_ = std::move(m);
    return o;
}

UnitaryMatrix::UnitaryMatrix(CMatrix m) {
    if (m.rows() != m.cols())
        throw PreconditionError("unitary must be square");
    if (unitarity_defect(m) > kUnitaryTol)
        throw PreconditionError("matrix is not unitary");
    m_ = std::move(m);
}

UnitaryMatrix UnitaryMatrix::trusted(CMatrix m) {
    UnitaryMatrix u;
    u.m_ = std::move(m);
    return u;
}

UnitaryMatrix UnitaryMatrix::identity(int d) { return trusted(CMatrix::Identity(d, d)); }

UnitaryMatrix UnitaryMatrix::adjoint() const { return trusted(m_.adjoint()); }

PureState::PureState(CVector amplitudes) {
    if (std::abs(amplitudes.norm() - 1.0) > kNormTol)
        throw PreconditionError("pure state must have unit norm");
    psi_ = std::move(amplitudes);
}

PureState PureState::normalized(const CVector &v) {
    const double n = v.norm();
    if (n == 0.0)
        throw PreconditionError("cannot normalize the zero vector");
    PureState s;
    s.psi_ = v / n;
    return s;
}

Observable PureState::density() const {
    CMatrix rho = psi_ * psi_.adjoint();
    return Observable(std::move(rho));
}

} // namespace kicktomo
