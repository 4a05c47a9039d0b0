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

#include "noiselab/qsim/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "noiselab/errors.hpp"

namespace noiselab {

namespace {

constexpr double kCompletenessTolerance = 1e-8;

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

// I/2 (x) tr_q(rho): entries whose row and column agree on bit q get the
// average of the two diagonal blocks, the rest vanish.
ComplexMatrix fully_depolarized(const ComplexMatrix& rho, int qubit) {
    const Eigen::Index dim = rho.rows();
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Eigen::Index j0 = j & ~bit;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if ((i ^ j) & bit) continue;
            const Eigen::Index i0 = i & ~bit;
            out(i, j) = 0.5 * (rho(i0, j0) + rho(i0 | bit, j0 | bit));
        }
    }
    return out;
}

ComplexMatrix pauli(int which) {
    ComplexMatrix m(2, 2);
    switch (which) {
        case 0:
            m << 1.0, 0.0, 0.0, 1.0;
            break;
        case 1:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case 2:
            m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
            break;
        default:
            m << 1.0, 0.0, 0.0, -1.0;
    }
    return m;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, std::vector<int> targets)
    : ops_(std::move(operators)), targets_(std::move(targets)) {
    if (ops_.empty()) throw std::invalid_argument("a channel needs at least one Kraus operator");
    if (targets_.empty()) throw std::invalid_argument("a channel needs at least one target");
    check_targets(targets_, 64);
    const Eigen::Index dim = Eigen::Index{1} << targets_.size();
    for (const auto& k : ops_) {
        if (k.rows() != dim || k.cols() != dim) throw std::invalid_argument("Kraus operator size mismatch");
    }
    if (!(completeness_error() <= kCompletenessTolerance)) {
        throw std::invalid_argument("Kraus operators are not trace preserving within 1e-8");
    }
}

KrausChannel KrausChannel::depolarizing(int qubit, double p) {
    check_probability(p, "depolarizing probability");
    std::vector<ComplexMatrix> ops;
    ops.push_back(std::sqrt(1.0 - 0.75 * p) * pauli(0));
    if (p > 0.0) {
        for (int k = 1; k < 4; ++k) ops.push_back(0.5 * std::sqrt(p) * pauli(k));
    }
    return KrausChannel(std::move(ops), {qubit});
}

double KrausChannel::completeness_error() const {
    const Eigen::Index dim = ops_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto& k : ops_) sum += k.adjoint() * k;
    return (sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

DensityState apply_channel(const DensityState& s, const KrausChannel& channel) {
    check_targets(channel.targets(), s.num_qubits());
    const Eigen::Index dim = s.matrix().rows();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const auto& k : channel.operators()) {
        DensityState term = s;
        term.conjugate(k, channel.targets());
        out += term.matrix();
    }
    return DensityState(s.num_qubits(), std::move(out));
}

DensityState depolarize(const DensityState& s, int qubit, double p) {
    check_probability(p, "depolarizing probability");
    const int q[] = {qubit};
    check_targets(q, s.num_qubits());
    if (p == 0.0) return s;
    return DensityState(s.num_qubits(), (1.0 - p) * s.matrix() + p * fully_depolarized(s.matrix(), qubit));
}

CorrelatedNoiseSpec::CorrelatedNoiseSpec(double p00, double p01, double p10, double p11, int first, int second)
    : p00_(p00), p01_(p01), p10_(p10), p11_(p11), first_(first), second_(second) {
    for (double p : {p00, p01, p10, p11}) check_probability(p, "corruption probability");
    if (!(std::abs(p00 + p01 + p10 + p11 - 1.0) <= 1e-12)) {
        throw std::invalid_argument("corruption probabilities must sum to 1");
    }
    if (first == second || first < 0 || second < 0) throw std::invalid_argument("need two distinct qubits");
}

CorrelatedNoiseSpec CorrelatedNoiseSpec::independent(double r1, double r2, int first, int second) {
    check_probability(r1, "marginal rate");
    check_probability(r2, "marginal rate");
    return CorrelatedNoiseSpec((1.0 - r1) * (1.0 - r2), (1.0 - r1) * r2, r1 * (1.0 - r2), r1 * r2, first, second);
}

DensityState correlated_depolarize(const DensityState& s, const CorrelatedNoiseSpec& spec) {
    const int q[] = {spec.first(), spec.second()};
    check_targets(q, s.num_qubits());
    const ComplexMatrix& rho = s.matrix();
    const ComplexMatrix d1 = fully_depolarized(rho, spec.first());
    const ComplexMatrix d2 = fully_depolarized(rho, spec.second());
    const ComplexMatrix d12 = fully_depolarized(d1, spec.second());
    return DensityState(s.num_qubits(), spec.p00() * rho + spec.p10() * d1 + spec.p01() * d2 + spec.p11() * d12);
}

KrausChannel uniform_mixture(const std::vector<KrausChannel>& channels, int num_qubits) {
    if (channels.empty()) throw std::invalid_argument("mixture of no channels");
    const double w = 1.0 / std::sqrt(static_cast<double>(channels.size()));
    std::vector<ComplexMatrix> ops;
    for (const auto& ch : channels) {
        for (const auto& k : ch.operators()) ops.push_back(w * embed_operator(k, ch.targets(), num_qubits));
    }
    return KrausChannel(std::move(ops), all_qubits(num_qubits));
}

std::vector<KrausChannel> time_smoothed_channels(const Circuit& c, const std::vector<KrausChannel>& raw) {
    const std::size_t steps = c.depth();
    if (raw.size() != steps) {
        throw std::invalid_argument("need one raw channel per step: " + std::to_string(steps) + " steps, " +
                                    std::to_string(raw.size()) + " channels");
    }
    if (steps == 0) return {};
    const int n = c.num_qubits();
    if (n > kMaxDensityQubits) throw SizeLimitError("time smoothing is limited to 10 qubits");
    const Eigen::Index dim = Eigen::Index{1} << n;

    // prefix[t] = U_{t-1} ... U_0 (0-based), prefix[0] = I.
    std::vector<ComplexMatrix> prefix(steps, ComplexMatrix::Identity(dim, dim));
    for (std::size_t t = 1; t < steps; ++t) prefix[t] = c.step_unitary(t - 1) * prefix[t - 1];

    std::vector<std::vector<ComplexMatrix>> embedded(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        for (const auto& k : raw[s].operators()) embedded[s].push_back(embed_operator(k, raw[s].targets(), n));
    }

    const double w = 1.0 / std::sqrt(static_cast<double>(steps));
    std::vector<KrausChannel> out;
    out.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        std::vector<ComplexMatrix> ops;
        for (std::size_t s = 0; s < steps; ++s) {
            if (s == t) {
                for (const auto& k : embedded[s]) ops.push_back(w * k);
                continue;
            }
            const ComplexMatrix u = prefix[t] * prefix[s].adjoint();
            const ComplexMatrix u_inv = u.adjoint();
            for (const auto& k : embedded[s]) ops.push_back(w * (u * k * u_inv));
        }
        out.emplace_back(std::move(ops), all_qubits(n));
    }
    return out;
}

ComplexMatrix transfer_matrix(const KrausChannel& channel, int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    ComplexMatrix out = ComplexMatrix::Zero(dim * dim, dim * dim);
    for (const auto& op : channel.operators()) {
        const ComplexMatrix k = embed_operator(op, channel.targets(), num_qubits);
        const ComplexMatrix kc = k.conjugate();
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index b = 0; b < dim; ++b) {
                if (k(a, b) == Complex(0.0)) continue;
                out.block(a * dim, b * dim, dim, dim) += k(a, b) * kc;
            }
        }
    }
    return out;
}

}  // namespace noiselab
