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

#ifndef NOISELAB_QSIM_NOISY_CAT_HPP
#define NOISELAB_QSIM_NOISY_CAT_HPP

#include <string>

#include "noiselab/qsim/channel.hpp"

namespace noiselab {

/// Correlation between the events "first qubit corrupted" and "second qubit
/// corrupted":
///   (p11 - r1 r2) / sqrt(r1 (1 - r1) r2 (1 - r2)).
/// Throws DegenerateInputError when a marginal rate is 0 or 1.
double error_correlation(const CorrelatedNoiseSpec& spec);

/// Lower-bound kernel K(x, y) for the noisy-cat inequality. Both families
/// satisfy K(x, y) / min(x, y)^2 -> infinity as x, y -> 0 for alpha < 2:
///   min-power        K = min(x, y)^alpha   (default, alpha = 3/2)
///   geometric-power  K = (x y)^(alpha / 2)
class NoisyCatConfig {
   public:
    enum class Family { MinPower, GeometricPower };

    NoisyCatConfig() = default;
    /// alpha must lie in the open interval (1, 2).
    NoisyCatConfig(Family family, double alpha);

    static NoisyCatConfig from_name(const std::string& family, double alpha);

    Family family() const { return family_; }
    double alpha() const { return alpha_; }
    std::string name() const;

    double kernel(double x, double y) const;

   private:
    Family family_ = Family::MinPower;
    double alpha_ = 1.5;
};

struct NoisyCatResult {
    bool pass = false;
    /// cor - K(r1, r2) * ent
    double margin = 0.0;
    double correlation = 0.0;
    double kernel = 0.0;
    double entanglement = 0.0;
};

/// Evaluates cor(E1, E2) >= K(r1, r2) * ent for entanglement ent in [0, 1].
NoisyCatResult noisy_cat_check(double ent, const CorrelatedNoiseSpec& spec, const NoisyCatConfig& cfg = {});

}  // namespace noiselab

#endif
