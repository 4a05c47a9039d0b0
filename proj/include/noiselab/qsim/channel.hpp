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

#ifndef NOISELAB_QSIM_CHANNEL_HPP
#define NOISELAB_QSIM_CHANNEL_HPP

#include <vector>

#include "noiselab/qsim/circuit.hpp"
#include "noiselab/qsim/state.hpp"

namespace noiselab {

/// CPTP map in operator-sum form acting on `targets`. Every operator is
/// 2^k x 2^k with k = targets.size(), and sum K^dagger K = I within 1e-8.
class KrausChannel {
   public:
    KrausChannel(std::vector<ComplexMatrix> operators, std::vector<int> targets);

    /// (1 - p) rho + p (I/2 (x) tr_q rho) as the Kraus set
    /// {sqrt(1 - 3p/4) I, sqrt(p)/2 X, sqrt(p)/2 Y, sqrt(p)/2 Z}.
    static KrausChannel depolarizing(int qubit, double p);

    const std::vector<ComplexMatrix>& operators() const { return ops_; }
    const std::vector<int>& targets() const { return targets_; }

    /// max |sum K^dagger K - I|
    double completeness_error() const;

   private:
    std::vector<ComplexMatrix> ops_;
    std::vector<int> targets_;
};

/// sum_K K rho K^dagger
DensityState apply_channel(const DensityState& s, const KrausChannel& channel);

/// Partial depolarization of one qubit with probability p in [0, 1].
DensityState depolarize(const DensityState& s, int qubit, double p);

/// Joint depolarizing noise on a qubit pair. p00, p01, p10, p11 are the
/// probabilities that neither, only the second, only the first, or both
/// qubits are corrupted.
class CorrelatedNoiseSpec {
   public:
    CorrelatedNoiseSpec(double p00, double p01, double p10, double p11, int first = 0, int second = 1);

    /// Independent corruption with marginal rates r1 and r2.
    static CorrelatedNoiseSpec independent(double r1, double r2, int first = 0, int second = 1);

    double p00() const { return p00_; }
    double p01() const { return p01_; }
    double p10() const { return p10_; }
    double p11() const { return p11_; }
    int first() const { return first_; }
    int second() const { return second_; }

    /// Marginal corruption probabilities of the first and second qubit.
    double r1() const { return p10_ + p11_; }
    double r2() const { return p01_ + p11_; }

   private:
    double p00_, p01_, p10_, p11_;
    int first_, second_;
};

/// Mixture over the four corruption events, each corrupted qubit fully
/// depolarized.
DensityState correlated_depolarize(const DensityState& s, const CorrelatedNoiseSpec& spec);

/// Uniform mixture (1/T) sum_s E_s, all channels embedded on the full
/// register (targets = all_qubits(n)).
KrausChannel uniform_mixture(const std::vector<KrausChannel>& channels, int num_qubits);

/// Time-smoothed noise. For each step t returns
///   E'_t = (1/T) sum_s U_{s,t} E_s U_{s,t}^{-1},
/// where U_{s,t} = U_{t-1} ... U_s for s < t, U_{t,t} = I and
/// U_{s,t} = U_{t,s}^{-1} for s > t. With P_t = U_{t-1} ... U_1 every case
/// reduces to U_{s,t} = P_t P_s^dagger. Outputs act on all qubits and hold
/// the T * k conjugated Kraus operators scaled by 1/sqrt(T).
std::vector<KrausChannel> time_smoothed_channels(const Circuit& c, const std::vector<KrausChannel>& raw);

/// Superoperator sum_K K (x) conj(K) on the full register (row-major
/// vectorization). Two channels are equal iff their transfer matrices are.
ComplexMatrix transfer_matrix(const KrausChannel& channel, int num_qubits);

}  // namespace noiselab

#endif
