// Copyright 2026 The noiselab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical kernels.

#ifndef NOISELAB_TESTS_ORACLES_HPP
#define NOISELAB_TESTS_ORACLES_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

/// The 2x3 example matrix with orthonormal rows.
inline Eigen::MatrixXcd example_matrix() {
    const double a = 1.0 / std::sqrt(3.0);
    const double b = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m(2, 3);
    m << a, Complex(0.0, a), a, 0.0, b, Complex(0.0, b);
    return m;
}

/// Explicit probabilists' Hermite polynomials He_0..He_6.
inline double hermite_closed_form(int k, double x) {
    const double x2 = x * x;
    switch (k) {
        case 0:
            return 1.0;
        case 1:
            return x;
        case 2:
            return x2 - 1.0;
        case 3:
            return x * (x2 - 3.0);
        case 4:
            return x2 * x2 - 6.0 * x2 + 3.0;
        case 5:
            return x * (x2 * x2 - 10.0 * x2 + 15.0);
        case 6:
            return x2 * x2 * x2 - 15.0 * x2 * x2 + 45.0 * x2 - 15.0;
    }
    return NAN;
}

/// E[f(x, y)] for standard normals with correlation rho, by a tensor
/// trapezoid rule on [-L, L]^2 over independent (x, z), y = rho x + s z.
inline double gaussian_pair_expectation(const std::function<double(double, double)>& f, double rho, int points = 801,
                                        double half_width = 10.0) {
    const double h = 2.0 * half_width / (points - 1);
    const double s = std::sqrt(1.0 - rho * rho);
    const double norm = 1.0 / (2.0 * std::numbers::pi);
    double total = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = -half_width + i * h;
        const double wx = std::exp(-0.5 * x * x);
        for (int j = 0; j < points; ++j) {
            const double z = -half_width + j * h;
            total += wx * std::exp(-0.5 * z * z) * f(x, rho * x + s * z);
        }
    }
    return total * h * h * norm;
}

/// P(Z1 < h, Z2 < h) by Plackett's identity
///   Phi(h)^2 + (1 / 2 pi) int_0^rho exp(-h^2 / (1 + r)) / sqrt(1 - r^2) dr
/// with composite Simpson on [0, rho], rho < 1.
inline double bivariate_equal_cdf_plackett(double h, double rho, int intervals = 20000) {
    const double phi = 0.5 * std::erfc(-h / std::numbers::sqrt2);
    auto g = [&](double r) { return std::exp(-h * h / (1.0 + r)) / std::sqrt(1.0 - r * r); };
    const double step = rho / intervals;
    double sum = g(0.0) + g(rho);
    for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * g(k * step);
    return phi * phi + sum * step / 3.0 / (2.0 * std::numbers::pi);
}

/// fhat(S) = 2^-n sum_x f(x) (-1)^{|S & x|}, straight from the definition.
inline std::vector<double> walsh_coefficients_brute_force(int n, const std::vector<int>& values) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> out(size, 0.0);
    for (std::size_t s = 0; s < size; ++s) {
        for (std::size_t x = 0; x < size; ++x) out[s] += (std::popcount(s & x) % 2 ? -1.0 : 1.0) * values[x];
        out[s] /= static_cast<double>(size);
    }
    return out;
}

inline double binary_entropy(double p) { return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p); }

}  // namespace oracle

#endif
