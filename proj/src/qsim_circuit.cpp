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

#include "noiselab/qsim/circuit.hpp"

#include <fstream>
#include <stdexcept>

#include "noiselab/ensembles.hpp"
#include "noiselab/errors.hpp"
#include "noiselab/matrix_json.hpp"

namespace noiselab {

Circuit::Circuit(int num_qubits, std::vector<Gate> steps) : n_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("a circuit needs at least one qubit");
    if (num_qubits > kMaxPureQubits) throw SizeLimitError("circuits are limited to 20 qubits");
    for (auto& g : steps) append(std::move(g));
}

void Circuit::append(Gate g) {
    check_targets(g.targets(), n_);
    steps_.push_back(std::move(g));
}

ComplexMatrix Circuit::step_unitary(std::size_t t) const {
    const Gate& g = steps_.at(t);
    return embed_operator(g.matrix(), g.targets(), n_);
}

PureState run_circuit(const Circuit& c, PureState s) {
    if (s.num_qubits() != c.num_qubits()) throw std::invalid_argument("state and circuit differ in qubit count");
    for (const auto& g : c.steps()) s.apply(g);
    return s;
}

ComplexMatrix random_unitary(int dim, SeededRng& rng) { return haar_rows(dim, dim, rng); }

Circuit random_circuit(int num_qubits, std::size_t depth, SeededRng& rng) {
    Circuit c(num_qubits);
    const GateKind kinds[] = {GateKind::H,  GateKind::T,    GateKind::X,  GateKind::Y,
                              GateKind::Z,  GateKind::CNOT, GateKind::U1, GateKind::U2};
    const std::uint64_t choices = num_qubits == 1 ? 6 : 8;
    // Index 5 is cnot; with a single qubit the pool is {h, t, x, y, z, u1}.
    for (std::size_t step = 0; step < depth; ++step) {
        std::uint64_t pick = rng.below(choices);
        if (num_qubits == 1 && pick == 5) pick = 6;
        const GateKind kind = kinds[pick];
        const int a = static_cast<int>(rng.below(num_qubits));
        if (kind == GateKind::CNOT || kind == GateKind::U2) {
            int b = static_cast<int>(rng.below(num_qubits - 1));
            if (b >= a) ++b;
            if (kind == GateKind::CNOT) {
                c.append(Gate::cnot(a, b));
            } else {
                c.append(Gate(GateKind::U2, {a, b}, random_unitary(4, rng)));
            }
        } else if (kind == GateKind::U1) {
            c.append(Gate(GateKind::U1, {a}, random_unitary(2, rng)));
        } else {
            c.append(Gate(kind, {a}));
        }
    }
    return c;
}

Circuit circuit_from_json(const nlohmann::json& j) {
    const nlohmann::json* gates = &j;
    int n = 0;
    if (j.is_object()) {
        if (!j.contains("gates")) throw std::invalid_argument("circuit object needs a gates list");
        gates = &j["gates"];
        if (j.contains("n_qubits")) n = j["n_qubits"].get<int>();
    }
    if (!gates->is_array()) throw std::invalid_argument("circuit gates must be a JSON list");
    std::vector<Gate> steps;
    int max_target = -1;
    for (const auto& g : *gates) {
        if (!g.is_object() || !g.contains("gate") || !g.contains("targets")) {
            throw std::invalid_argument("each gate needs 'gate' and 'targets'");
        }
        const GateKind kind = gate_kind_from_string(g["gate"].get<std::string>());
        auto targets = g["targets"].get<std::vector<int>>();
        for (int t : targets) max_target = std::max(max_target, t);
        if (kind == GateKind::U1 || kind == GateKind::U2) {
            if (!g.contains("matrix")) throw std::invalid_argument("gate " + to_string(kind) + " needs a matrix");
            const Eigen::Index dim = kind == GateKind::U1 ? 2 : 4;
            steps.emplace_back(kind, std::move(targets), entries_from_json(g["matrix"], dim, dim));
        } else {
            steps.emplace_back(kind, std::move(targets));
        }
    }
    if (n == 0) n = std::max(1, max_target + 1);
    return Circuit(n, std::move(steps));
}

nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : c.steps()) {
        nlohmann::json entry = {{"gate", to_string(g.kind())}, {"targets", g.targets()}};
        if (g.kind() == GateKind::U1 || g.kind() == GateKind::U2) entry["matrix"] = entries_to_json(g.matrix());
        gates.push_back(std::move(entry));
    }
    return {{"n_qubits", c.num_qubits()}, {"gates", gates}};
}

Circuit load_circuit(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open circuit file " + path.string());
    return circuit_from_json(nlohmann::json::parse(in));
}

}  // namespace noiselab
