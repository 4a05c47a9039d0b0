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

#ifndef NOISELAB_QSIM_STATE_HPP
#define NOISELAB_QSIM_STATE_HPP

#include <span>
#include <string>
#include <vector>

#include "noiselab/matrix.hpp"

namespace noiselab {

// Basis convention: qubit q is bit q of the basis-state index. A local
// operator on targets (t_0, ..., t_{k-1}) indexes its 2^k basis states with
// t_0 as the most significant bit, so CNOT on (control, target) is the usual
// [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]].

inline constexpr int kMaxPureQubits = 20;
inline constexpr int kMaxDensityQubits = 10;

/// Validates that targets are distinct and < num_qubits.
void check_targets(std::span<const int> targets, int num_qubits);

/// Applies op (2^k x 2^k, k = targets.size()) to the target qubits of the
/// 2^n-dimensional vector stored at data with the given element stride.
void apply_local(Complex* data, int num_qubits, std::ptrdiff_t stride, const ComplexMatrix& op,
                 std::span<const int> targets);

/// Full 2^n x 2^n matrix of op acting on targets, identity elsewhere.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const int> targets, int num_qubits);

/// (n-1, ..., 1, 0): with this target order a full-system local operator
/// uses the global basis index unchanged.
std::vector<int> all_qubits(int num_qubits);

enum class GateKind { H, T, X, Y, Z, CNOT, U1, U2 };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

/// Named or custom 1-/2-qubit unitary with its target qubits.
class Gate {
   public:
    /// Named gates: h, t, x, y, z (one target) and cnot (control, target).
    Gate(GateKind kind, std::vector<int> targets);
    /// u1 (2x2) or u2 (4x4) custom unitary; checked to 1e-10.
    Gate(GateKind kind, std::vector<int> targets, ComplexMatrix matrix);

    static Gate h(int q) { return Gate(GateKind::H, {q}); }
    static Gate t(int q) { return Gate(GateKind::T, {q}); }
    static Gate x(int q) { return Gate(GateKind::X, {q}); }
    static Gate y(int q) { return Gate(GateKind::Y, {q}); }
    static Gate z(int q) { return Gate(GateKind::Z, {q}); }
    static Gate cnot(int control, int target) { return Gate(GateKind::CNOT, {control, target}); }
    static Gate unitary(std::vector<int> targets, ComplexMatrix matrix);

    GateKind kind() const { return kind_; }
    const std::vector<int>& targets() const { return targets_; }
    const ComplexMatrix& matrix() const { return matrix_; }

    Gate inverse() const;

   private:
    GateKind kind_;
    std::vector<int> targets_;
    ComplexMatrix matrix_;
};

/// Pure state of up to 20 qubits.
class PureState {
   public:
    /// |0...0>
    explicit PureState(int num_qubits);
    /// Throws std::invalid_argument unless the norm is 1 within 1e-10.
    PureState(int num_qubits, Eigen::VectorXcd amplitudes);

    static PureState basis(int num_qubits, std::size_t index);

    int num_qubits() const { return n_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    double norm() const { return amps_.norm(); }

    void apply(const Gate& g);
    /// Applies an arbitrary local unitary without building a Gate.
    void apply_unitary(const ComplexMatrix& op, std::span<const int> targets);

   private:
    int n_;
    Eigen::VectorXcd amps_;
};

/// Density matrix of up to 10 qubits.
class DensityState {
   public:
    explicit DensityState(const PureState& pure);
    /// Throws std::invalid_argument unless the trace is 1 and the matrix is
    /// Hermitian, both within 1e-10.
    DensityState(int num_qubits, ComplexMatrix matrix);

    static DensityState maximally_mixed(int num_qubits);

    int num_qubits() const { return n_; }
    const ComplexMatrix& matrix() const { return rho_; }
    Complex trace() const { return rho_.trace(); }

    void apply(const Gate& g);
    /// rho -> op rho op^dagger on the targets.
    void conjugate(const ComplexMatrix& op, std::span<const int> targets);

   private:
    int n_;
    ComplexMatrix rho_;
};

PureState apply_gate(PureState s, const Gate& g);
DensityState apply_gate(DensityState s, const Gate& g);

/// |<a|b>|^2
double fidelity(const PureState& a, const PureState& b);

/// Largest deviation from the density-matrix invariants: |tr - 1|,
/// max |rho - rho^dagger| and max(0, -lambda_min).
struct DensityDiagnostics {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double negativity = 0.0;
};
DensityDiagnostics diagnose(const DensityState& s);

}  // namespace noiselab

#endif
