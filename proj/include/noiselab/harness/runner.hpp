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

// Running experiments and persisting their results.

#ifndef NOISELAB_HARNESS_RUNNER_HPP
#define NOISELAB_HARNESS_RUNNER_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "noiselab/harness/config.hpp"

namespace noiselab::harness {

struct PayloadTable {
    std::string name;  // file name, e.g. "distribution.csv"
    std::string csv;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::string build_id;
    double duration_seconds = 0.0;
    std::vector<PayloadTable> tables;
    nlohmann::json summary;

    const PayloadTable* table(const std::string& name) const;
};

std::string build_id();

// Validates, computes, and writes every payload file plus run_info.json into
// config.output_dir. Payload files (tables and summary.json) depend only on
// the config; run_info.json carries the build id and wall-clock duration.
ExperimentResult run(const ExperimentConfig& config);

// Computes without touching the filesystem.
ExperimentResult compute(const ExperimentConfig& config);
void write_result(const ExperimentResult& result);

// Reads a result directory written by run(). Throws NotFoundError when the
// summary or a listed payload is missing.
ExperimentResult load_result(const std::filesystem::path& dir);

// Long-form table with one observation per row, projected from the primary
// payload of the result's kind.
std::string emit_plot_data(const ExperimentResult& result);

// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string primary_table_name(ExperimentKind kind);
std::vector<std::string> plot_columns(ExperimentKind kind);

}  // namespace noiselab::harness

#endif  // NOISELAB_HARNESS_RUNNER_HPP
