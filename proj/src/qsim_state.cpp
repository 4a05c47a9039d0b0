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

#include "noiselab/qsim/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "noiselab/errors.hpp"

namespace noiselab {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kStateTolerance = 1e-10;

void check_qubit_count(int n, int limit, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + " needs at least one qubit");
    if (n > limit) {
        throw SizeLimitError(std::string(what) + " is limited to " + std::to_string(limit) + " qubits, got " +
                             std::to_string(n));
    }
}

ComplexMatrix named_matrix(GateKind kind) {
    const double s = 1.0 / std::numbers::sqrt2;
    const Complex i(0.0, 1.0);
    ComplexMatrix m(2, 2);
    switch (kind) {
        case GateKind::H:
            m << s, s, s, -s;
            return m;
        case GateKind::T:
            m << 1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4);
            return m;
        case GateKind::X:
            m << 0.0, 1.0, 1.0, 0.0;
            return m;
        case GateKind::Y:
            m << 0.0, -i, i, 0.0;
            return m;
        case GateKind::Z:
            m << 1.0, 0.0, 0.0, -1.0;
            return m;
        case GateKind::CNOT: {
            ComplexMatrix c = ComplexMatrix::Zero(4, 4);
            c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
            return c;
        }
        default:
            throw std::invalid_argument("gate " + to_string(kind) + " needs an explicit matrix");
    }
}

int arity(GateKind kind) { return kind == GateKind::CNOT || kind == GateKind::U2 ? 2 : 1; }

}  // namespace

void check_targets(std::span<const int> targets, int num_qubits) {
    for (std::size_t a = 0; a < targets.size(); ++a) {
        if (targets[a] < 0 || targets[a] >= num_qubits) {
            throw std::invalid_argument("qubit index " + std::to_string(targets[a]) + " out of range for " +
                                        std::to_string(num_qubits) + " qubits");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (targets[a] == targets[b]) throw std::invalid_argument("repeated target qubit");
        }
    }
}

void apply_local(Complex* data, int num_qubits, std::ptrdiff_t stride, const ComplexMatrix& op,
                 std::span<const int> targets) {
    const int k = static_cast<int>(targets.size());
    const std::size_t local_dim = std::size_t{1} << k;
    if (static_cast<std::size_t>(op.rows()) != local_dim || op.cols() != op.rows()) {
        throw std::invalid_argument("operator size does not match its target count");
    }
    check_targets(targets, num_qubits);
    std::vector<std::size_t> offset(local_dim, 0);
    std::size_t target_mask = 0;
    for (int a = 0; a < k; ++a) target_mask |= std::size_t{1} << targets[a];
    for (std::size_t l = 0; l < local_dim; ++l) {
        for (int a = 0; a < k; ++a) {
            if (l >> (k - 1 - a) & 1) offset[l] |= std::size_t{1} << targets[a];
        }
    }
    std::vector<Complex> in(local_dim), out(local_dim);
    const std::size_t dim = std::size_t{1} << num_qubits;
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & target_mask) continue;
        for (std::size_t l = 0; l < local_dim; ++l) in[l] = data[static_cast<std::ptrdiff_t>(base + offset[l]) * stride];
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < local_dim; ++c) acc += op(r, c) * in[c];
            out[r] = acc;
        }
        for (std::size_t l = 0; l < local_dim; ++l) data[static_cast<std::ptrdiff_t>(base + offset[l]) * stride] = out[l];
    }
}

ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const int> targets, int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    ComplexMatrix full = ComplexMatrix::Identity(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) apply_local(full.col(j).data(), num_qubits, 1, op, targets);
    return full;
}

std::vector<int> all_qubits(int num_qubits) {
    std::vector<int> q(num_qubits);
    for (int a = 0; a < num_qubits; ++a) q[a] = num_qubits - 1 - a;
    return q;
}

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "h";
        case GateKind::T:
            return "t";
        case GateKind::X:
            return "x";
        case GateKind::Y:
            return "y";
        case GateKind::Z:
            return "z";
        case GateKind::CNOT:
            return "cnot";
        case GateKind::U1:
            return "u1";
        case GateKind::U2:
            return "u2";
    }
    return "unknown";
}

GateKind gate_kind_from_string(const std::string& name) {
    for (GateKind k : {GateKind::H, GateKind::T, GateKind::X, GateKind::Y, GateKind::Z, GateKind::CNOT, GateKind::U1,
                       GateKind::U2}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown gate '" + name + "'");
}

Gate::Gate(GateKind kind, std::vector<int> targets) : Gate(kind, std::move(targets), named_matrix(kind)) {}

Gate::Gate(GateKind kind, std::vector<int> targets, ComplexMatrix matrix)
    : kind_(kind), targets_(std::move(targets)), matrix_(std::move(matrix)) {
    const int k = arity(kind_);
    if (static_cast<int>(targets_.size()) != k) {
        throw std::invalid_argument("gate " + to_string(kind_) + " takes " + std::to_string(k) + " target(s)");
    }
    check_targets(targets_, 64);
    const Eigen::Index dim = Eigen::Index{1} << k;
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw std::invalid_argument("gate " + to_string(kind_) + " needs a " + std::to_string(dim) + "x" +
                                    std::to_string(dim) + " matrix");
    }
    const double err = (matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (!(err <= kUnitaryTolerance)) throw std::invalid_argument("gate matrix is not unitary within 1e-10");
}

Gate Gate::unitary(std::vector<int> targets, ComplexMatrix matrix) {
    const GateKind kind = targets.size() == 2 ? GateKind::U2 : GateKind::U1;
    return Gate(kind, std::move(targets), std::move(matrix));
}

Gate Gate::inverse() const {
    switch (kind_) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::CNOT:
            return *this;
        default:
            return Gate(targets_.size() == 2 ? GateKind::U2 : GateKind::U1, targets_, matrix_.adjoint());
    }
}

PureState::PureState(int num_qubits) : n_(num_qubits) {
    check_qubit_count(num_qubits, kMaxPureQubits, "PureState");
    amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
    amps_(0) = 1.0;
}

PureState::PureState(int num_qubits, Eigen::VectorXcd amplitudes) : n_(num_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(num_qubits, kMaxPureQubits, "PureState");
    if (amps_.size() != (Eigen::Index{1} << num_qubits)) throw std::invalid_argument("amplitude count is not 2^n");
    if (!(std::abs(amps_.squaredNorm() - 1.0) <= kStateTolerance)) {
        throw std::invalid_argument("state is not normalized within 1e-10");
    }
}

PureState PureState::basis(int num_qubits, std::size_t index) {
    PureState s(num_qubits);
    if (index >= static_cast<std::size_t>(s.amps_.size())) throw std::invalid_argument("basis index out of range");
    s.amps_(0) = 0.0;
    s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
}

void PureState::apply(const Gate& g) { apply_unitary(g.matrix(), g.targets()); }

void PureState::apply_unitary(const ComplexMatrix& op, std::span<const int> targets) {
    apply_local(amps_.data(), n_, 1, op, targets);
}

DensityState::DensityState(const PureState& pure) : n_(pure.num_qubits()) {
    check_qubit_count(n_, kMaxDensityQubits, "DensityState");
    rho_ = pure.amplitudes() * pure.amplitudes().adjoint();
}

DensityState::DensityState(int num_qubits, ComplexMatrix matrix) : n_(num_qubits), rho_(std::move(matrix)) {
    check_qubit_count(num_qubits, kMaxDensityQubits, "DensityState");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (rho_.rows() != dim || rho_.cols() != dim) throw std::invalid_argument("density matrix is not 2^n x 2^n");
    if (!(std::abs(rho_.trace() - 1.0) <= kStateTolerance)) {
        throw std::invalid_argument("density matrix trace differs from 1 by more than 1e-10");
    }
    if (!((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= kStateTolerance)) {
        throw std::invalid_argument("density matrix is not Hermitian within 1e-10");
    }
}

DensityState DensityState::maximally_mixed(int num_qubits) {
    check_qubit_count(num_qubits, kMaxDensityQubits, "DensityState");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    return DensityState(num_qubits, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

void DensityState::apply(const Gate& g) { conjugate(g.matrix(), g.targets()); }

void DensityState::conjugate(const ComplexMatrix& op, std::span<const int> targets) {
    const Eigen::Index dim = rho_.rows();
    // Column-major storage: columns are contiguous, rows have stride dim.
    for (Eigen::Index j = 0; j < dim; ++j) apply_local(rho_.col(j).data(), n_, 1, op, targets);
    const ComplexMatrix op_conj = op.conjugate();
    for (Eigen::Index i = 0; i < dim; ++i) apply_local(rho_.data() + i, n_, dim, op_conj, targets);
}

PureState apply_gate(PureState s, const Gate& g) {
    s.apply(g);
    return s;
}

DensityState apply_gate(DensityState s, const Gate& g) {
    s.apply(g);
    return s;
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("fidelity of states of different size");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

DensityDiagnostics diagnose(const DensityState& s) {
    const ComplexMatrix& rho = s.matrix();
    DensityDiagnostics d;
    d.trace_error = std::abs(rho.trace() - 1.0);
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
    d.negativity = std::max(0.0, -eig.eigenvalues().minCoeff());
    return d;
}

}  // namespace noiselab
