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

#ifndef NOISELAB_QSIM_TRAJECTORIES_HPP
#define NOISELAB_QSIM_TRAJECTORIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "noiselab/qsim/channel.hpp"
#include "noiselab/qsim/circuit.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

/// Joint law of which qubits get corrupted in one cycle.
///
///   none          no errors
///   independent   each qubit i.i.d. with probability `rate`
///   pairwise      Gaussian copula: latent Z_i = sqrt(c) W + sqrt(1 - c) e_i,
///                 qubit i corrupted iff Z_i < Phi^-1(rate). The latent
///                 correlation c is solved so that every pair of corruption
///                 events has Pearson correlation `correlation` in [0, 1].
///   synchronized  all qubits together with probability `rate`, else none
class ErrorModel {
   public:
    enum class Kind { None, Independent, Pairwise, Synchronized };

    static ErrorModel none();
    static ErrorModel independent(double rate);
    static ErrorModel pairwise(double rate, double correlation);
    static ErrorModel synchronized(double rate);
    /// Names: none, independent, pairwise, synchronized (alias all-or-none).
    static ErrorModel from_name(const std::string& name, double rate, double correlation = 0.0);
    /// Pairwise model whose every pair follows spec. Requires r1 == r2.
    static ErrorModel from_spec(const CorrelatedNoiseSpec& spec);

    Kind kind() const { return kind_; }
    std::string name() const;
    double rate() const { return rate_; }
    double correlation() const { return correlation_; }
    double latent_correlation() const { return latent_; }

    /// Sorted indices of the qubits corrupted in one cycle.
    std::vector<int> sample_cycle(int num_qubits, SeededRng& rng) const;

   private:
    ErrorModel(Kind kind, double rate, double correlation);

    Kind kind_;
    double rate_;
    double correlation_;
    double latent_ = 0.0;
    double threshold_ = 0.0;
};

/// P(Z1 < h, Z2 < h) for standard normals with correlation rho, via Owen's T.
double bivariate_normal_equal_cdf(double h, double rho);

/// Latent correlation giving corruption-event correlation `event_corr` at
/// marginal rate `rate`; bisection on the copula.
double latent_for_event_correlation(double rate, double event_corr);

/// corrupted[trial][cycle] = sorted corrupted qubit indices.
struct ErrorTrace {
    int num_qubits = 0;
    std::vector<std::vector<std::vector<int>>> corrupted;
};

/// Hex bit mask of a corrupted set (bit q = qubit q), most significant digit
/// first, "0" for the empty set.
std::string corrupted_mask_hex(const std::vector<int>& qubits);

/// trial,cycle,corrupted_count,corrupted_mask_hex
std::string error_trace_to_csv(const ErrorTrace& trace);

struct TrajectoryStats {
    double mean_count = 0.0;
    double std_count = 0.0;
    /// histogram[k] = number of (trial, cycle) records with k corrupted qubits.
    std::vector<std::size_t> histogram;
    /// Corruption events per qubit per cycle.
    double raw_rate = 0.0;
    /// First corruptions divided by (qubit, cycle) pairs not corrupted before
    /// in the same trial.
    double survival_rate = 0.0;
    /// Mean |<ideal|final>|^2 and its standard error; only set when state
    /// simulation ran.
    bool has_fidelity = false;
    double mean_fidelity = 0.0;
    double fidelity_std_error = 0.0;
};

struct TrajectoryResult {
    ErrorTrace trace;
    TrajectoryStats stats;
};

/// Monte Carlo trajectories: after every gate the error model picks the
/// corrupted qubits, and each corrupted qubit receives a uniformly random
/// Pauli from {I, X, Y, Z} (a full depolarization on average). Trial k uses
/// substream derive("trajectory", k) of a stream seeded from one rng value.
/// With simulate_state = false only the error events are sampled.
TrajectoryResult run_noisy_trajectories(const Circuit& c, const ErrorModel& model, std::size_t trials,
                                        SeededRng& rng, bool simulate_state = true);

struct FluctuationRow {
    int num_qubits = 0;
    double mean = 0.0;
    double std = 0.0;
};

struct FluctuationTable {
    std::vector<FluctuationRow> rows;
    /// Least-squares slope of log(std) against log(N).
    double fitted_exponent = 0.0;
};

/// Standard deviation of the per-cycle corrupted count for each N in the
/// ascending list, over `trials` independent cycles each. Throws
/// DegenerateInputError when a standard deviation is 0 (no slope exists).
FluctuationTable fluctuation_scaling(const ErrorModel& model, const std::vector<int>& n_values, std::size_t trials,
                                     SeededRng& rng);

/// N,mean,std,fitted_exponent
std::string fluctuation_to_csv(const FluctuationTable& table);

}  // namespace noiselab

#endif
