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

// Typed, validated views of the kind-specific parameter maps. Shared by
// validate() and run(); not installed.

#ifndef NOISELAB_SRC_HARNESS_PARAMS_HPP
#define NOISELAB_SRC_HARNESS_PARAMS_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "noiselab/harness/config.hpp"
#include "noiselab/matrix.hpp"
#include "noiselab/noise.hpp"
#include "noiselab/qsim/circuit.hpp"

namespace noiselab::harness::detail {

inline constexpr std::size_t kMaxSamples = 10'000'000;
inline constexpr std::size_t kMaxTrials = 10'000'000;
// Largest number of complex entries held by the smoothed Kraus operators.
inline constexpr std::size_t kSmoothingEntryCap = std::size_t{1} << 24;

class ParamReader {
   public:
    ParamReader(const nlohmann::json& params, std::vector<Violation>& out);

    bool has(const std::string& key) const;
    long long integer(const std::string& key, long long fallback, long long lo, long long hi,
                      const std::string& constraint = "range");
    double real(const std::string& key, double fallback, double lo, double hi, const std::string& constraint = "range");
    bool flag(const std::string& key, bool fallback);
    std::string text(const std::string& key, const std::string& fallback);
    std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed);
    std::vector<long long> integers(const std::string& key, const std::vector<long long>& fallback, long long lo,
                                    long long hi, const std::string& constraint = "range");
    std::vector<double> reals(const std::string& key, const std::vector<double>& fallback, double lo, double hi,
                              const std::string& constraint = "range");

    void skip(const std::string& key) { seen_.insert(key); }
    void fail(const std::string& key, const std::string& constraint, const std::string& message);
    // Flags keys that no accessor consumed.
    void finish();
    bool ok() const { return out_.size() == start_; }

   private:
    const nlohmann::json& params_;
    std::vector<Violation>& out_;
    std::size_t start_;
    std::set<std::string> seen_;
};

struct ExactParams {
    std::optional<ComplexMatrix> matrix;  // loaded from file
    int n = 2;
    int m = 4;
    InputEnsemble ensemble = InputEnsemble::Haar;
    std::size_t samples = 0;
    bool cross_check = false;
};

struct FourierParams {
    std::string function = "majority";
    int bits = 3;
    int variable = 1;
    std::vector<int> values;
    std::size_t samples = 0;
};

struct SweepParams {
    SweepSpec spec;
};

struct HermiteParams {
    std::vector<int> degrees = {1, 2, 3, 4};
    double epsilon = 0.36;
    std::size_t mc = 100000;
};

struct CircuitSource {
    std::optional<Circuit> circuit;  // loaded from file
    int qubits = 2;
    std::size_t depth = 5;
};

struct CircuitParams {
    CircuitSource source;
    std::string model = "independent";
    double rate = 0.01;
    double correlation = 0.0;
    std::size_t trials = 1000;
    bool simulate_state = true;
};

struct NoisyCatParams {
    std::array<double, 4> spec = {0.9, 0.04, 0.04, 0.02};
    std::string state = "cat";
    double theta = 0.0;
    std::string kernel = "min-power";
    double alpha = 1.5;
};

struct SmoothingParams {
    CircuitSource source;
    double rate = 0.05;
};

struct FluctuationParams {
    std::string model = "independent";
    double rate = 0.1;
    double correlation = 0.3;
    std::vector<int> n_values = {8, 16, 32, 64};
    std::size_t trials = 10000;
};

using KindParams = std::variant<ExactParams, FourierParams, SweepParams, HermiteParams, CircuitParams, NoisyCatParams,
                                SmoothingParams, FluctuationParams>;

// Appends violations for anything out of range or over a cap. The returned
// value is only meaningful when no violation was added.
KindParams parse_parameters(const ExperimentConfig& config, std::vector<Violation>& out);

}  // namespace noiselab::harness::detail

#endif  // NOISELAB_SRC_HARNESS_PARAMS_HPP
