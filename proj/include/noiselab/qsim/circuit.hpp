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

#ifndef NOISELAB_QSIM_CIRCUIT_HPP
#define NOISELAB_QSIM_CIRCUIT_HPP

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "noiselab/qsim/state.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

/// Sequence of gates U_1..U_T on n qubits; each gate is one time step.
class Circuit {
   public:
    explicit Circuit(int num_qubits, std::vector<Gate> steps = {});

    int num_qubits() const { return n_; }
    const std::vector<Gate>& steps() const { return steps_; }
    std::size_t depth() const { return steps_.size(); }

    void append(Gate g);

    /// Full-register unitary of step t (0-based).
    ComplexMatrix step_unitary(std::size_t t) const;

   private:
    int n_;
    std::vector<Gate> steps_;
};

PureState run_circuit(const Circuit& c, PureState s);

/// Haar-random k x k unitary.
ComplexMatrix random_unitary(int dim, SeededRng& rng);

/// depth random steps, each a uniformly chosen gate from
/// {h, t, x, y, z, cnot, u1, u2} on random distinct targets; u1/u2 are
/// Haar-random. Two-qubit gates are skipped when num_qubits == 1.
Circuit random_circuit(int num_qubits, std::size_t depth, SeededRng& rng);

// Circuit JSON: either a bare gate list
//   [{"gate": "h", "targets": [0]}, {"gate": "u1", "targets": [1], "matrix": [[re, im], ...]}]
// (qubit count = largest target + 1) or {"n_qubits": n, "gates": [...]}.
Circuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const Circuit& c);
Circuit load_circuit(const std::filesystem::path& path);

}  // namespace noiselab

#endif
