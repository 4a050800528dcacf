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

// Reference implementations used only as test oracles. Each is written from
// the textbook definition and shares no code with the library.

#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace oracle {

using CM = Eigen::MatrixXcd;
using RM = Eigen::MatrixXd;

/// sum_{k<terms} A^k / k!.
inline CM taylor_expm(const CM &a, int terms = 40) {
    CM sum = CM::Identity(a.rows(), a.cols());
    CM term = sum;
    for (int k = 1; k < terms; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

struct Spin {
    CM jx, jy, jz;
};

/// Spin matrices from the ladder operator J+|m> = sqrt(j(j+1) - m(m+1)) |m+1>,
/// basis ordered m = j, j-1, ..., -j.
inline Spin ladder_spin(double j) {
    const int d = static_cast<int>(std::lround(2 * j)) + 1;
    CM jp = CM::Zero(d, d), jz = CM::Zero(d, d);
    for (int r = 0; r < d; ++r) {
        const double m = j - r;
        jz(r, r) = m;
        if (r > 0) // <m+1| J+ |m>, row of m+1 is r-1
            jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    const CM jm = jp.adjoint();
    const std::complex<double> i(0, 1);
    return {(jp + jm) / 2.0, (jp - jm) / (2.0 * i), jz};
}

/// sum_{m=-j}^{j} m^2 = j (j+1) (2j+1) / 3.
inline double sum_m_squared(double j) { return j * (j + 1) * (2 * j + 1) / 3.0; }

/// Pseudoinverse from an SVD, singular values below rcond * s_max dropped.
inline RM svd_pinv(const RM &a, double rcond) {
    Eigen::JacobiSVD<RM> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    RM sinv = RM::Zero(a.cols(), a.rows());
    const double cut = s.size() ? rcond * s(0) : 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > cut)
            sinv(k, k) = 1.0 / s(k);
    return svd.matrixV() * sinv * svd.matrixU().transpose();
}

/// Classical Kullback-Leibler divergence in nats.
inline double classical_kl(const std::vector<double> &p, const std::vector<double> &q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0)
            s += p[i] * std::log(p[i] / q[i]);
    return s;
}

/**
 * Minimum of (r - r0)^T W (r - r0) over the sphere |r| = radius in R^3,
 * scanned on a (theta, phi) grid with the given angular pitch. For a
 * positive definite W and r0 outside the ball the constrained minimum lies
 * on the sphere.
 */
inline double sphere_grid_min(const Eigen::Matrix3d &w, const Eigen::Vector3d &r0, double radius,
                              double pitch) {
    const double pi = std::acos(-1.0);
    const int n_theta = static_cast<int>(std::ceil(pi / pitch));
    const int n_phi = static_cast<int>(std::ceil(2 * pi / pitch));
    std::vector<double> cp(n_phi), sp(n_phi);
    for (int b = 0; b < n_phi; ++b) {
        cp[b] = std::cos(b * 2 * pi / n_phi);
        sp[b] = std::sin(b * 2 * pi / n_phi);
    }
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= n_theta; ++a) {
        const double th = a * pi / n_theta;
        const double z = radius * std::cos(th) - r0(2);
        const double rho = radius * std::sin(th);
        for (int b = 0; b < n_phi; ++b) {
            const double x = rho * cp[b] - r0(0);
            const double y = rho * sp[b] - r0(1);
            const double v = w(0, 0) * x * x + w(1, 1) * y * y + w(2, 2) * z * z +
                             2 * (w(0, 1) * x * y + w(0, 2) * x * z + w(1, 2) * y * z);
            best = std::min(best, v);
        }
    }
    return best;
}

} // namespace oracle
