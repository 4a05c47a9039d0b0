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

#include "noiselab/qsim/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "noiselab/sampling.hpp"

namespace noiselab {

namespace {

double entropy_of_eigenvalues(const Eigen::VectorXd& eig) {
    double h = 0.0;
    for (double l : eig) {
        if (l > kEntropyCutoff) h -= l * std::log2(l);
    }
    return std::max(h, 0.0);
}

// Entropy of the first qubit of the two-qubit pure state a, given as
// amplitudes indexed (b_first << 1) | b_second.
double pair_entropy(const std::array<Complex, 4>& a) {
    ComplexMatrix rho(2, 2);
    rho(0, 0) = std::norm(a[0]) + std::norm(a[1]);
    rho(1, 1) = std::norm(a[2]) + std::norm(a[3]);
    rho(0, 1) = a[0] * std::conj(a[2]) + a[1] * std::conj(a[3]);
    rho(1, 0) = std::conj(rho(0, 1));
    return von_neumann_entropy(rho);
}

}  // namespace

double von_neumann_entropy(const ComplexMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho, Eigen::EigenvaluesOnly);
    return entropy_of_eigenvalues(eig.eigenvalues());
}

ComplexMatrix reduced_qubit_state(const PureState& s, int qubit) {
    const int q[] = {qubit};
    check_targets(q, s.num_qubits());
    const auto& amp = s.amplitudes();
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    for (Eigen::Index i = 0; i < amp.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = amp(i);
        const Complex a1 = amp(i | bit);
        rho(0, 0) += std::norm(a0);
        rho(1, 1) += std::norm(a1);
        rho(0, 1) += a0 * std::conj(a1);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

double entanglement_entropy(const PureState& s, int qubit) { return von_neumann_entropy(reduced_qubit_state(s, qubit)); }

double emergent_entanglement(const PureState& s, std::pair<int, int> pair, SeededRng& rng, std::size_t trials) {
    const int n = s.num_qubits();
    if (n < 3) throw std::invalid_argument("emergent entanglement needs at least 3 qubits");
    const int q[] = {pair.first, pair.second};
    check_targets(q, n);

    const std::size_t b1 = std::size_t{1} << pair.first;
    const std::size_t b2 = std::size_t{1} << pair.second;
    std::vector<int> rest;
    for (int k = 0; k < n; ++k) {
        if (k != pair.first && k != pair.second) rest.push_back(k);
    }
    const std::size_t outcomes = std::size_t{1} << rest.size();
    const auto& amp = s.amplitudes();

    // Basis index of the measured register's outcome o with the pair at |00>.
    auto base_index = [&](std::size_t o) {
        std::size_t idx = 0;
        for (std::size_t r = 0; r < rest.size(); ++r) {
            if (o >> r & 1) idx |= std::size_t{1} << rest[r];
        }
        return idx;
    };
    auto pair_amplitudes = [&](std::size_t o) {
        const std::size_t b = base_index(o);
        return std::array<Complex, 4>{amp(b), amp(b | b2), amp(b | b1), amp(b | b1 | b2)};
    };
    auto weight = [](const std::array<Complex, 4>& a) {
        return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3]);
    };
    auto conditional_entropy = [&](std::array<Complex, 4> a, double w) {
        const double scale = 1.0 / std::sqrt(w);
        for (auto& x : a) x *= scale;
        return pair_entropy(a);
    };

    if (rest.size() <= 10) {
        double total = 0.0;
        for (std::size_t o = 0; o < outcomes; ++o) {
            const auto a = pair_amplitudes(o);
            const double w = weight(a);
            if (w > 0.0) total += w * conditional_entropy(a, w);
        }
        return total;
    }

    if (trials == 0) throw std::invalid_argument("sampled emergent entanglement needs trials >= 1");
    OutcomeDistribution marginal;
    marginal.probs.resize(outcomes);
    for (std::size_t o = 0; o < outcomes; ++o) marginal.probs[o] = weight(pair_amplitudes(o));
    double total = 0.0;
    for (std::size_t o : sample(marginal, rng, trials)) {
        const auto a = pair_amplitudes(o);
        total += conditional_entropy(a, weight(a));
    }
    return total / static_cast<double>(trials);
}

double trace_distance(const DensityState& a, const DensityState& b) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("trace distance of states of different size");
    const ComplexMatrix diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return std::clamp(0.5 * eig.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

}  // namespace noiselab
