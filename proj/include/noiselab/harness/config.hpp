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

// Experiment configuration: parsing, serialization and validation.

#ifndef NOISELAB_HARNESS_CONFIG_HPP
#define NOISELAB_HARNESS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace noiselab::harness {

enum class ExperimentKind {
    BosonExact,
    FermionExact,
    Fourier,
    NoiseSweep,
    HermiteCheck,
    CircuitRun,
    NoisyCat,
    Smoothing,
    Fluctuation,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);
const std::vector<ExperimentKind>& all_experiment_kinds();

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::BosonExact;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "out";
    // Kind-specific settings; see README for the keys each kind accepts.
    nlohmann::json parameters = nlohmann::json::object();
    // Relative file parameters resolve against this directory. Not serialized.
    std::filesystem::path base_dir;

    std::filesystem::path resolve(const std::string& file) const;

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
        return a.kind == b.kind && a.seed == b.seed && a.output_dir == b.output_dir && a.parameters == b.parameters;
    }
};

nlohmann::json config_to_json(const ExperimentConfig& config);
// Throws std::invalid_argument on malformed input.
ExperimentConfig config_from_json(const nlohmann::json& j);
// Relative paths inside the file resolve against the file's directory.
ExperimentConfig load_config(const std::filesystem::path& path);

struct Violation {
    std::string field;
    std::string constraint;
    std::string message;

    // Cap violations map to a distinct CLI exit status.
    bool is_cap() const;
};

std::vector<Violation> validate(const ExperimentConfig& config);
std::string describe(const std::vector<Violation>& violations);

}  // namespace noiselab::harness

#endif  // NOISELAB_HARNESS_CONFIG_HPP
