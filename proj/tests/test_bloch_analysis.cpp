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

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "kicktomo/bloch_analysis.hpp"
#include "kicktomo/spin_algebra.hpp"

using namespace kicktomo;

namespace {

const SpinParams kSpin = SpinParams::from_j(10);

const HermitianBasis &basis21() {
    static const HermitianBasis b = hermitian_basis(kSpin);
    return b;
}

/// <psi| (I/d + sum_{i<=k} r'_pi(i) E_pi(i)) |psi>, built as a matrix.
std::vector<double> oracle_curve(const PureState &psi, const HermitianBasis &basis,
                                 const HermitianBasis &perturbed, const std::vector<int> &perm) {
    const int d = basis.dim();
    CMatrix est = CMatrix::Identity(d, d) / static_cast<double>(d);
    const auto value = [&] { return psi.amplitudes().dot(est * psi.amplitudes()).real(); };
    std::vector<double> out{value()};
    for (int a : perm) {
        const double r_prime = (psi.density().matrix() * perturbed[a].matrix()).trace().real();
        est += r_prime * basis[a].matrix();
        out.push_back(value());
    }
    return out;
}

} // namespace

TEST_CASE("eta = 0 leaves the basis unchanged") {
    const auto ur = haar_random_unitary(kSpin, 1);
    const auto p = perturbed_basis(basis21(), ur, 0.0);
    double worst = 0.0;
    for (int a = 0; a < 440; ++a)
        worst = std::max(worst, (p[a].matrix() - basis21()[a].matrix()).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-12);
}

TEST_CASE("perturbed basis stays orthonormal and traceless") {
    const auto ur = haar_random_unitary(SpinParams::from_j(2), 3);
    const auto base = hermitian_basis(SpinParams::from_j(2));
    for (double eta : {0.1, 0.5, 1.0}) {
        const auto p = perturbed_basis(base, ur, eta);
        for (int a = 0; a < p.size(); ++a) {
            CHECK(std::abs(p[a].matrix().trace()) < 1e-12);
            for (int b = 0; b < p.size(); ++b) {
                const Complex g = (p[a].matrix() * p[b].matrix()).trace();
                CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) < 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(perturbed_basis(base, ur, 1.2), PreconditionError);
}

TEST_CASE("measurement plan orders by magnitude with ties by index") {
    // |m = j> has nonzero weight only on the diagonal generators: ties among the zeros.
    CVector up = CVector::Zero(21);
    up(0) = 1.0;
    const auto rho = PureState(up).density();
    const auto plan = measurement_plan(rho, basis21(), basis21());
    std::vector<int> sorted = plan.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (int a = 0; a < 440; ++a)
        CHECK(sorted[a] == a);
    for (int i = 1; i < 440; ++i) {
        const double prev = std::abs(plan.true_components(plan.permutation[i - 1]));
        const double cur = std::abs(plan.true_components(plan.permutation[i]));
        CHECK(prev >= cur);
        if (prev == cur)
            CHECK(plan.permutation[i - 1] < plan.permutation[i]);
    }
}

TEST_CASE("ideal fidelity curve endpoints and monotonicity at eta = 0") {
    for (Seed s = 0; s < 3; ++s) {
        const auto rho = haar_random_state(kSpin, s).density();
        const auto curve = ideal_fidelity_curve(rho, basis21(), basis21());
        REQUIRE(curve.size() == 441);
        CHECK(curve.times.front() == 0);
        CHECK(curve.times.back() == 440);
        CHECK(curve.values.front() == doctest::Approx(1.0 / 21).epsilon(1e-14));
        CHECK(std::abs(curve.values.back() - 1.0) < 1e-10);
        for (std::size_t k = 1; k < curve.size(); ++k) {
            CHECK(curve.values[k] >= curve.values[k - 1]);
            CHECK(curve.values[k] <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("ideal fidelity curve matches the explicit estimated-state oracle") {
    const auto psi = haar_random_state(kSpin, 5);
    const auto ur = haar_random_unitary(kSpin, 6);
    const auto pert = perturbed_basis(basis21(), ur, 0.3);
    const auto curve = ideal_fidelity_curve(psi.density(), basis21(), pert);
    const auto plan = measurement_plan(psi.density(), basis21(), pert);
    const auto ref = oracle_curve(psi, basis21(), pert, plan.permutation);
    for (std::size_t k = 0; k < ref.size(); ++k)
        CHECK(curve.values[k] == doctest::Approx(ref[k]).epsilon(1e-10));
}

TEST_CASE("perturbation lowers the curve and vanishes continuously") {
    const auto psi = haar_random_state(kSpin, 7);
    const auto ur = haar_random_unitary(kSpin, 8);
    const auto base = ideal_fidelity_curve(psi.density(), basis21(), basis21());
    const auto strong = ideal_fidelity_curve(psi.density(), basis21(), perturbed_basis(basis21(), ur, 0.3));
    for (std::size_t k = 51; k < 441; ++k)
        CHECK(strong.values[k] <= base.values[k]);

    double prev = 1.0;
    for (double eta : {1e-2, 1e-3}) {
        const auto c = ideal_fidelity_curve(psi.density(), basis21(), perturbed_basis(basis21(), ur, eta));
        double gap = 0.0;
        for (std::size_t k = 0; k < 441; ++k)
            gap = std::max(gap, std::abs(c.values[k] - base.values[k]));
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("ideal fidelity curve rejects mixed states") {
    const Observable mixed(CMatrix::Identity(21, 21) / 21.0);
    CHECK_THROWS_AS(ideal_fidelity_curve(mixed, basis21(), basis21()), PreconditionError);
}
