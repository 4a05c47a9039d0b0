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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "noiselab/errors.hpp"
#include "noiselab/harness/config.hpp"
#include "noiselab/harness/runner.hpp"
#include "noiselab/parallel.hpp"

using namespace noiselab;
using namespace noiselab::harness;
namespace fs = std::filesystem;

namespace {

const fs::path kData = NOISELAB_DATA_DIR;

class ScratchDir {
   public:
    ScratchDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("noiselab-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~ScratchDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

   private:
    fs::path path_;
};

ExperimentConfig make(ExperimentKind kind, nlohmann::json params, const fs::path& out = "unused") {
    ExperimentConfig c;
    c.kind = kind;
    c.seed = 11;
    c.output_dir = out;
    c.parameters = std::move(params);
    return c;
}

bool has_violation(const std::vector<Violation>& vs, const std::string& field, const std::string& constraint) {
    for (const auto& v : vs) {
        if (v.field == field && v.constraint == constraint) return true;
    }
    return false;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST(Config, bundled_examples_round_trip) {
    std::size_t seen = 0;
    for (const auto& entry : fs::directory_iterator(kData / "configs")) {
        const ExperimentConfig c = load_config(entry.path());
        EXPECT_EQ(config_from_json(nlohmann::json::parse(config_to_json(c).dump())), c) << entry.path();
        EXPECT_TRUE(validate(c).empty()) << entry.path() << "\n" << describe(validate(c));
        ++seen;
    }
    EXPECT_GE(seen, all_experiment_kinds().size());
}

TEST(Config, parsing_errors) {
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"seed": 1})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"kind": "teleport"})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"kind": "fourier", "seed": -1})")),
                 std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"kind": "fourier", "extra": 1})")),
                 std::invalid_argument);
    EXPECT_THROW(load_config("/nonexistent/config.json"), NotFoundError);
    const auto c = config_from_json(nlohmann::json::parse(R"({"kind": "fourier", "seed": 18446744073709551615})"));
    EXPECT_EQ(c.seed, 18446744073709551615ULL);
    for (ExperimentKind k : all_experiment_kinds()) EXPECT_EQ(experiment_kind_from_string(to_string(k)), k);
}

TEST(Validate, examples) {
    EXPECT_TRUE(validate(make(ExperimentKind::BosonExact, {{"n", 3}, {"m", 6}})).empty());

    const auto cap = validate(make(ExperimentKind::BosonExact, {{"n", 8}, {"m", 40}}));
    ASSERT_TRUE(has_violation(cap, "parameters.n", "enumeration cap"));
    EXPECT_TRUE(cap.front().is_cap());

    const auto eps = validate(make(ExperimentKind::NoiseSweep, {{"epsilons", {0.1, 1.5}}}));
    ASSERT_TRUE(has_violation(eps, "parameters.epsilons", "epsilon range"));
    EXPECT_FALSE(eps.front().is_cap());
}

TEST(Validate, caps_per_module) {
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::NoiseSweep, {{"n_values", {2, 7}}, {"mode_rule", "n2+n"}})),
                              "parameters.n_values", "enumeration cap"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::Smoothing, {{"qubits", 11}})), "parameters.qubits",
                              "density cap"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::CircuitRun, {{"qubits", 21}})), "parameters.qubits",
                              "trajectory cap"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::BosonExact, {{"n", 10}, {"m", 10}, {"cross_check", true}})),
                              "parameters.cross_check", "naive oracle cap"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::Fourier, {{"function", "parity"}, {"bits", 21}})),
                              "parameters.bits", "fourier cap"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::FermionExact, {{"n", 4}, {"m", 3}, {"ensemble", "gaussian"}})),
                              "parameters.m", "shape"));
}

TEST(Validate, fields_and_types) {
    const auto vs = validate(make(ExperimentKind::HermiteCheck, {{"degree", 2}, {"epsilon", "big"}, {"mc", 1}}));
    EXPECT_TRUE(has_violation(vs, "parameters.degree", "unknown parameter"));
    EXPECT_TRUE(has_violation(vs, "parameters.epsilon", "type"));
    EXPECT_TRUE(has_violation(vs, "parameters.mc", "range"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::BosonExact, {{"matrix", "missing.json"}})),
                              "parameters.matrix", "file exists"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::NoisyCat, {{"spec", {1.0, 0.0, 0.0, 0.0}}})),
                              "parameters.spec", "degenerate spec"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::NoisyCat, {{"spec", {0.5, 0.5, 0.5, 0.0}}})),
                              "parameters.spec", "noise spec"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::Fluctuation, {{"n_values", {16, 8}}})),
                              "parameters.n_values", "ascending"));
    EXPECT_TRUE(has_violation(validate(make(ExperimentKind::NoisyCat, {{"alpha", 2.0}})), "parameters.alpha",
                              "alpha range"));
    auto c = make(ExperimentKind::Fourier, nlohmann::json::object());
    c.output_dir.clear();
    EXPECT_TRUE(has_violation(validate(c), "output_dir", "required"));
}

TEST(Run, rejects_invalid_configs_before_compute) {
    EXPECT_THROW(compute(make(ExperimentKind::BosonExact, {{"n", 8}, {"m", 40}})), SizeLimitError);
    EXPECT_THROW(compute(make(ExperimentKind::NoiseSweep, {{"epsilons", {1.5}}})), std::invalid_argument);
}

TEST(Run, bundled_example_distribution) {
    ScratchDir dir;
    ExperimentConfig c = load_config(kData / "configs" / "boson_example.json");
    c.output_dir = dir.path();
    run(c);
    const auto rows = lines(slurp(dir.path() / "distribution.csv"));
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(rows[0], "outcome,prob");
    const double expected[] = {0.0, 1.0 / 6, 1.0 / 6, 2.0 / 6, 0.0, 2.0 / 6};
    for (int i = 0; i < 6; ++i) {
        const std::string& row = rows[i + 1];
        EXPECT_NEAR(std::stod(row.substr(row.rfind(',') + 1)), expected[i], 1e-12) << row;
    }
    const auto summary = nlohmann::json::parse(slurp(dir.path() / "summary.json"));
    EXPECT_LE(summary["statistics"]["cross_check_max_abs_deviation"].get<double>(), 1e-15);
    EXPECT_TRUE(fs::exists(dir.path() / "samples.csv"));
    EXPECT_TRUE(fs::exists(dir.path() / "run_info.json"));
}

TEST(Run, payloads_are_byte_identical_across_reruns_and_threads) {
    for (const char* name : {"boson_haar.json", "circuit_ghz.json", "smoothing.json", "noisy_cat.json"}) {
        ScratchDir a, b;
        ExperimentConfig c = load_config(kData / "configs" / name);
        c.output_dir = a.path();
        set_worker_threads(1);
        const auto ra = run(c);
        c.output_dir = b.path();
        set_worker_threads(4);
        run(c);
        set_worker_threads(1);
        for (const auto& t : ra.tables) EXPECT_EQ(slurp(a.path() / t.name), slurp(b.path() / t.name)) << t.name;
        EXPECT_EQ(slurp(a.path() / "summary.json"), slurp(b.path() / "summary.json")) << name;
    }
}

TEST(Run, sweep_columns_are_monotone_in_noise) {
    const auto r = compute(make(ExperimentKind::NoiseSweep, {{"n_values", {2, 3}},
                                                             {"epsilons", {0.05, 0.2, 0.4}},
                                                             {"inputs", 5},
                                                             {"mc", 200}}));
    const auto& cells = r.summary["statistics"]["cells"];
    ASSERT_EQ(cells.size(), 6u);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 1; j < 3; ++j) {
            EXPECT_LT(cells[3 * i + j]["correlation"].get<double>(), cells[3 * i + j - 1]["correlation"].get<double>());
            EXPECT_GT(cells[3 * i + j]["tv"].get<double>(), cells[3 * i + j - 1]["tv"].get<double>());
        }
    }
    EXPECT_EQ(lines(emit_plot_data(r)).front(), "n,epsilon,correlation,stderr");
    EXPECT_EQ(lines(emit_plot_data(r)).size(), 7u);
}

TEST(Run, module_errors_carry_context) {
    const auto c = make(ExperimentKind::Fluctuation, {{"rate", 0.0001}, {"n_values", {2, 4}}, {"trials", 2}});
    try {
        compute(c);
        FAIL() << "expected a degenerate-input error";
    } catch (const DegenerateInputError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("fluctuation: ", 0), 0u) << e.what();
    }
}

TEST(PlotData, fluctuation_and_empty_tables) {
    const auto fl = compute(make(ExperimentKind::Fluctuation, {{"trials", 500}}));
    const auto rows = lines(emit_plot_data(fl));
    EXPECT_EQ(rows.front(), "N,std,fitted_exponent");
    EXPECT_EQ(rows.size(), 5u);

    const auto empty = compute(make(ExperimentKind::CircuitRun, {{"qubits", 2}, {"depth", 0}}));
    EXPECT_EQ(emit_plot_data(empty), "trial,cycle,corrupted_count\n");

    const auto dist = compute(make(ExperimentKind::Fourier, {{"function", "majority"}, {"bits", 3}}));
    EXPECT_EQ(lines(emit_plot_data(dist))[2], "{1},0.25");
    const auto pairs = compute(make(ExperimentKind::BosonExact, {{"n", 2}, {"m", 2}}));
    EXPECT_EQ(lines(emit_plot_data(pairs))[2].substr(0, 7), "\"{1,2}\"");
}

TEST(PlotData, missing_payload_is_not_found) {
    auto r = compute(make(ExperimentKind::HermiteCheck, {{"degrees", {1}}, {"mc", 1000}}));
    r.tables.clear();
    EXPECT_THROW(emit_plot_data(r), NotFoundError);

    ScratchDir dir;
    auto c = make(ExperimentKind::HermiteCheck, {{"degrees", {1}}, {"mc", 1000}}, dir.path());
    run(c);
    const auto loaded = load_result(dir.path());
    EXPECT_EQ(loaded.config, c);
    EXPECT_EQ(emit_plot_data(loaded), emit_plot_data(compute(c)));
    fs::remove(dir.path() / "hermite.csv");
    EXPECT_THROW(load_result(dir.path()), NotFoundError);
    EXPECT_THROW(load_result(dir.path() / "nowhere"), NotFoundError);
}

TEST(Files, atomic_write_replaces_and_leaves_no_temporaries) {
    ScratchDir dir;
    const fs::path target = dir.path() / "nested" / "table.csv";
    write_file_atomic(target, "a\n");
    write_file_atomic(target, "b\n");
    EXPECT_EQ(slurp(target), "b\n");
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(target.parent_path())) {
        (void)e;
        ++files;
    }
    EXPECT_EQ(files, 1u);
}
