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

#ifndef NOISELAB_NOISE_HPP
#define NOISELAB_NOISE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "noiselab/matrix.hpp"
#include "noiselab/rng.hpp"
#include "noiselab/sampling.hpp"

namespace noiselab {

/// Noise level eps in [0, 1]. rho() = sqrt(1 - eps) is the correlation each
/// matrix entry keeps with its noiseless value.
class NoiseLevel {
   public:
    explicit NoiseLevel(double epsilon);
    double epsilon() const { return epsilon_; }
    double rho() const;

   private:
    double epsilon_;
};

/// Ornstein-Uhlenbeck resampling M' = sqrt(1 - eps) M + sqrt(eps) G, where G
/// has i.i.d. complex Gaussian entries with E|g|^2 = entry_variance. Use
/// entry_variance equal to the input ensemble's entry variance (1 for
/// gaussian_matrix, 1/m for haar_rows) so the ensemble is stationary.
/// eps = 0 returns m untouched and draws nothing.
ComplexMatrix apply_matrix_noise(const ComplexMatrix& m, NoiseLevel eps, SeededRng& rng,
                                 double entry_variance = 1.0);

struct NoisyBosonOptions {
    /// Orthonormalize the rows of every noisy draw so each draw's boson
    /// distribution sums to 1.
    bool reorthonormalize = false;
    double entry_variance = 1.0;
};

struct NoisyDistribution {
    OutcomeDistribution distribution;
    /// Sum of the averaged probabilities. 1 up to rounding when draws were
    /// re-orthonormalized; arbitrary otherwise.
    double total_mass = 0.0;
    bool reorthonormalized = false;
    std::size_t mc_samples = 0;
};

/// Average of boson_distribution(apply_matrix_noise(m, eps)) over mc noise
/// draws (mc >= 100). Draw d uses substream derive("noisy-boson", d) of a
/// stream seeded from one rng value, and draws are summed in index order.
/// eps = 0 returns boson_distribution(m) exactly.
NoisyDistribution noisy_boson_distribution(const ComplexMatrix& m, NoiseLevel eps, std::size_t mc, SeededRng& rng,
                                           const NoisyBosonOptions& options = {});

/// Pearson correlation of the two probability vectors. Throws
/// std::invalid_argument when the outcome lists differ and
/// DegenerateInputError when either vector is constant.
double distribution_correlation(const OutcomeDistribution& d1, const OutcomeDistribution& d2);

/// 1/2 sum |p_i - q_i| over a common outcome list.
double total_variation(const OutcomeDistribution& d1, const OutcomeDistribution& d2);

/// Copy of d scaled to unit total mass.
OutcomeDistribution normalized(const OutcomeDistribution& d);

/// Probabilists' Hermite polynomial He_k(x) by the three-term recurrence.
double hermite_he(int k, double x);

struct DampingEstimate {
    int degree = 0;
    double epsilon = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    /// (1 - eps)^(k/2)
    double expected = 0.0;
    std::size_t mc_samples = 0;
};

/// Monte Carlo estimate of how much the noise operator damps He_k.
///
/// With x standard normal and y = sqrt(1 - eps) x + sqrt(eps) z, the estimate
/// is sum He_k(x) He_k(y) / sum He_k(x)^2, the least-squares slope of
/// E[He_k(y) | x] on He_k(x). Its limit is rho^k. The standard error is the
/// delta-method error of that ratio. k = 0 gives exactly 1.
DampingEstimate hermite_damping_check(int k, NoiseLevel eps, std::size_t mc, SeededRng& rng);

enum class InputEnsemble { Gaussian, Haar };

/// How the number of modes m follows from the boson count n.
enum class ModeRule { TwiceN, QuadraticN, Fixed };

std::string to_string(InputEnsemble e);
std::string to_string(ModeRule r);
InputEnsemble input_ensemble_from_string(const std::string& name);
ModeRule mode_rule_from_string(const std::string& name);

struct SweepSpec {
    InputEnsemble ensemble = InputEnsemble::Gaussian;
    ModeRule mode_rule = ModeRule::TwiceN;
    /// Used with ModeRule::Fixed.
    int fixed_modes = 0;
    std::vector<int> n_values;
    std::vector<double> epsilon_values;
    /// When set, the noise used at boson count n is epsilon_values[j] / n.
    bool epsilon_over_n = false;
    /// Independent input matrices per (n, eps) cell.
    std::size_t inputs = 20;
    std::size_t mc = 2000;
    bool reorthonormalize = false;

    int modes_for(int n) const;
    double epsilon_for(int n, std::size_t j) const;
};

struct SensitivityCell {
    int n = 0;
    int m = 0;
    /// Effective noise level used for this cell.
    double epsilon = 0.0;
    /// Mean Pearson correlation of ideal vs noisy distribution over inputs.
    double correlation = 0.0;
    double std_error = 0.0;
    /// Mean total variation between the normalized distributions.
    double tv = 0.0;
    double tv_std_error = 0.0;
};

struct SensitivityCurve {
    std::vector<int> n_values;
    std::vector<double> epsilon_values;
    /// Row-major over (n index, epsilon index).
    std::vector<SensitivityCell> cells;
    std::size_t mc_samples = 0;
    std::size_t inputs = 0;

    const SensitivityCell& cell(std::size_t n_index, std::size_t eps_index) const {
        return cells[n_index * epsilon_values.size() + eps_index];
    }
};

/// Ideal vs noisy boson distributions over fresh random inputs for every
/// (n, eps) pair. Inputs and noise draws for a given (n, input index) are
/// shared across all eps, so the columns of the curve are directly comparable.
SensitivityCurve sensitivity_sweep(const SweepSpec& spec, SeededRng& rng);

/// CSV with columns n,m,epsilon,correlation,tv,stderr,mc_samples.
std::string sensitivity_to_csv(const SensitivityCurve& curve);

}  // namespace noiselab

#endif
