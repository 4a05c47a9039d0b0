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

#ifndef NOISELAB_QSIM_MEASURES_HPP
#define NOISELAB_QSIM_MEASURES_HPP

#include <cstddef>
#include <utility>

#include "noiselab/qsim/state.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

/// Eigenvalues below this are treated as exactly zero in entropies.
inline constexpr double kEntropyCutoff = 1e-12;

/// Von Neumann entropy in bits of a Hermitian, unit-trace matrix.
double von_neumann_entropy(const ComplexMatrix& rho);

/// 2x2 reduced state of one qubit.
ComplexMatrix reduced_qubit_state(const PureState& s, int qubit);

/// Entropy (bits) of the reduced state of `qubit`: the entanglement of that
/// qubit with the rest of the register.
double entanglement_entropy(const PureState& s, int qubit);

/// Entanglement of a qubit pair after every other qubit is measured in the
/// computational basis: the outcome-probability weighted mean of the pair's
/// entanglement entropy. Exact enumeration when the measured register has at
/// most 2^10 outcomes, otherwise the mean over `trials` sampled outcomes.
double emergent_entanglement(const PureState& s, std::pair<int, int> pair, SeededRng& rng, std::size_t trials);

/// 1/2 ||a - b||_1 from the eigenvalues of the Hermitian difference.
double trace_distance(const DensityState& a, const DensityState& b);

}  // namespace noiselab

#endif
