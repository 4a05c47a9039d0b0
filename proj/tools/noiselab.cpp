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

// noiselab command-line driver.
//
// Exit status: 0 success, 2 invalid input, 3 size cap exceeded,
// 4 numerical contract violated, 1 anything else.

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "noiselab/errors.hpp"
#include "noiselab/harness/config.hpp"
#include "noiselab/harness/runner.hpp"
#include "noiselab/parallel.hpp"

namespace {

using nlohmann::json;
using noiselab::harness::ExperimentConfig;
using noiselab::harness::ExperimentKind;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;
constexpr int kExitNumerical = 4;

// Subcommand options that map one-to-one onto config parameters. Only
// options given on the command line are copied.
class Bindings {
   public:
    template <typename T>
    CLI::Option* option(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        auto value = std::make_shared<T>();
        CLI::Option* opt = app->add_option(flag, *value, help);
        items_.push_back({opt, [value, key](json& p) { p[key] = *value; }});
        return opt;
    }

    template <typename T>
    CLI::Option* list(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        return option<std::vector<T>>(app, flag, key, help)->delimiter(',');
    }

    CLI::Option* flag(CLI::App* app, const std::string& flag, const std::string& key, bool value,
                      const std::string& help) {
        CLI::Option* opt = app->add_flag(flag, help);
        items_.push_back({opt, [value, key](json& p) { p[key] = value; }});
        return opt;
    }

    void apply(json& params) const {
        for (const auto& [opt, set] : items_) {
            if (opt->count() > 0) set(params);
        }
    }

   private:
    std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> items_;
};

struct Command {
    CLI::App* app = nullptr;
    Bindings bindings;
    std::vector<ExperimentKind> kinds;
    // Parameter receiving --mc, if any.
    std::string mc_key;
};

int print_violations(const std::vector<noiselab::harness::Violation>& violations) {
    bool cap = false;
    for (const auto& v : violations) {
        std::cerr << "violation: " << v.field << " [" << v.constraint << "]: " << v.message << '\n';
        cap = cap || v.is_cap();
    }
    return cap ? kExitCap : kExitInvalid;
}

void print_summary(const noiselab::harness::ExperimentResult& r) {
    std::cout << noiselab::harness::to_string(r.config.kind) << ": wrote";
    for (const auto& t : r.tables) std::cout << ' ' << t.name;
    std::cout << " summary.json plot_data.csv run_info.json to " << r.config.output_dir.string() << '\n';
    std::cout << r.summary["statistics"].dump(2) << '\n';
    for (const auto& note : r.summary["notes"]) std::cout << "note: " << note.get<std::string>() << '\n';
}

int execute(const ExperimentConfig& config) {
    const auto violations = noiselab::harness::validate(config);
    if (!violations.empty()) return print_violations(violations);
    const auto result = noiselab::harness::run(config);
    noiselab::harness::write_file_atomic(config.output_dir / "plot_data.csv",
                                         noiselab::harness::emit_plot_data(result));
    print_summary(result);
    return kExitOk;
}

int main_impl(int argc, char** argv) {
    CLI::App app{"Boson/fermion sampling, Gaussian noise sensitivity and noisy circuit experiments"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string config_path;
    std::optional<long long> mc;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--seed", seed, "Master seed (64-bit)");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
    app.add_option("--mc", mc, "Monte Carlo draws (sweep, hermite-check) or trials (circuit, fluctuation)");
    app.add_option("--threads", threads, "Worker threads; results do not depend on this")->check(CLI::Range(1u, 256u));

    std::map<std::string, Command> commands;
    auto add = [&](const std::string& name, const std::string& help, std::vector<ExperimentKind> kinds,
                   std::string mc_key) -> Command& {
        Command& c = commands[name];
        c.app = app.add_subcommand(name, help);
        c.kinds = std::move(kinds);
        c.mc_key = std::move(mc_key);
        return c;
    };

    std::string sample_kind = "boson";
    {
        Command& c = add("sample", "Exact boson, fermion or Fourier distribution, optionally with draws",
                         {ExperimentKind::BosonExact, ExperimentKind::FermionExact, ExperimentKind::Fourier}, "");
        c.app->add_option("--kind", sample_kind, "boson | fermion | fourier")
            ->check(CLI::IsMember({"boson", "fermion", "fourier"}));
        auto& b = c.bindings;
        b.option<std::string>(c.app, "--matrix", "matrix", "Matrix JSON file");
        b.option<int>(c.app, "--n", "n", "Rows of a generated matrix");
        b.option<int>(c.app, "--m", "m", "Columns of a generated matrix");
        b.option<std::string>(c.app, "--ensemble", "ensemble", "haar | gaussian");
        b.option<std::string>(c.app, "--function", "function", "dictator | parity | majority | random | table");
        b.option<int>(c.app, "--bits", "bits", "Input bits of the Boolean function");
        b.option<int>(c.app, "--variable", "variable", "Dictator variable (1-based)");
        b.list<int>(c.app, "--values", "values", "Truth table of +1/-1 values");
        b.option<long long>(c.app, "--samples", "samples", "Number of draws to record");
        b.flag(c.app, "--cross-check", "cross_check", true, "Recompute with brute-force kernels");
    }
    {
        Command& c = add("noise-sweep", "Correlation of noisy and ideal boson distributions over (n, epsilon)",
                         {ExperimentKind::NoiseSweep}, "mc");
        auto& b = c.bindings;
        b.list<int>(c.app, "--n", "n_values", "Particle counts, comma separated");
        b.list<double>(c.app, "--eps", "epsilons", "Noise levels, comma separated");
        b.flag(c.app, "--eps-over-n", "epsilon_over_n", true, "Divide each noise level by n");
        b.option<std::string>(c.app, "--ensemble", "ensemble", "gaussian | haar");
        b.option<std::string>(c.app, "--modes", "mode_rule", "2n | n2+n | fixed");
        b.option<int>(c.app, "--fixed-modes", "fixed_modes", "Mode count for --modes fixed");
        b.option<long long>(c.app, "--inputs", "inputs", "Input matrices per cell");
        b.flag(c.app, "--reorthonormalize", "reorthonormalize", true, "Re-orthonormalize noisy rows");
    }
    {
        Command& c = add("hermite-check", "Damping of Hermite components under Gaussian noise",
                         {ExperimentKind::HermiteCheck}, "mc");
        c.bindings.list<int>(c.app, "--degrees", "degrees", "Hermite degrees, comma separated");
        c.bindings.option<double>(c.app, "--eps", "epsilon", "Noise level");
    }
    auto circuit_source = [](Command& c) {
        c.bindings.option<std::string>(c.app, "--circuit", "circuit", "Circuit JSON file");
        c.bindings.option<int>(c.app, "--qubits", "qubits", "Qubits of a generated random circuit");
        c.bindings.option<long long>(c.app, "--depth", "depth", "Depth of a generated random circuit");
    };
    {
        Command& c = add("circuit", "Noisy trajectories of a circuit under a named error model",
                         {ExperimentKind::CircuitRun}, "trials");
        circuit_source(c);
        c.bindings.option<std::string>(c.app, "--model", "model", "none | independent | pairwise | synchronized");
        c.bindings.option<double>(c.app, "--rate", "rate", "Per-qubit corruption probability per cycle");
        c.bindings.option<double>(c.app, "--corr", "correlation", "Pairwise event correlation");
        c.bindings.option<long long>(c.app, "--trials", "trials", "Trajectories");
        c.bindings.flag(c.app, "--no-state", "simulate_state", false, "Record error events only");
    }
    {
        Command& c = add("noisy-cat", "Correlated-error condition for an entangled pair", {ExperimentKind::NoisyCat},
                         "");
        c.bindings.list<double>(c.app, "--spec", "spec", "p00,p01,p10,p11");
        c.bindings.option<std::string>(c.app, "--state", "state", "cat | product | partial");
        c.bindings.option<double>(c.app, "--theta", "theta", "Angle of cos|00> + sin|11> for --state partial");
        c.bindings.option<std::string>(c.app, "--kernel", "kernel", "min-power | geometric-power");
        c.bindings.option<double>(c.app, "--alpha", "alpha", "Kernel exponent in (1, 2)");
    }
    {
        Command& c = add("smooth", "Time-smoothed noise channels of a circuit", {ExperimentKind::Smoothing}, "");
        circuit_source(c);
        c.bindings.option<double>(c.app, "--rate", "rate", "Depolarizing rate per touched qubit per step");
    }
    {
        Command& c = add("fluctuation", "Scaling of corrupted-qubit fluctuations with qubit count",
                         {ExperimentKind::Fluctuation}, "trials");
        c.bindings.option<std::string>(c.app, "--model", "model", "independent | pairwise | synchronized");
        c.bindings.option<double>(c.app, "--rate", "rate", "Per-qubit corruption probability");
        c.bindings.option<double>(c.app, "--corr", "correlation", "Pairwise event correlation");
        c.bindings.list<int>(c.app, "--n", "n_values", "Qubit counts, comma separated");
        c.bindings.option<long long>(c.app, "--trials", "trials", "Sampled cycles per qubit count");
    }
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a config against every range and cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }
    noiselab::set_worker_threads(threads);

    if (validate_cmd->parsed()) {
        if (config_path.empty()) {
            std::cerr << "validate needs --config\n";
            return kExitInvalid;
        }
        const ExperimentConfig config = noiselab::harness::load_config(config_path);
        const auto violations = noiselab::harness::validate(config);
        if (!violations.empty()) return print_violations(violations);
        std::cout << "ok: " << noiselab::harness::to_string(config.kind) << '\n';
        return kExitOk;
    }

    const Command* chosen = nullptr;
    for (const auto& [name, c] : commands) {
        if (c.app->parsed()) chosen = &c;
    }
    if (chosen == nullptr && config_path.empty()) {
        std::cerr << app.help();
        return kExitInvalid;
    }

    ExperimentConfig config;
    if (!config_path.empty()) {
        config = noiselab::harness::load_config(config_path);
    } else {
        config.kind = chosen->kinds.front();
    }
    if (chosen != nullptr) {
        if (chosen->app->get_name() == "sample") {
            const ExperimentKind wanted = sample_kind == "fermion"  ? ExperimentKind::FermionExact
                                          : sample_kind == "fourier" ? ExperimentKind::Fourier
                                                                     : ExperimentKind::BosonExact;
            if (config_path.empty() || chosen->app->get_option("--kind")->count() > 0) config.kind = wanted;
        }
        if (std::find(chosen->kinds.begin(), chosen->kinds.end(), config.kind) == chosen->kinds.end()) {
            std::cerr << "config kind " << noiselab::harness::to_string(config.kind) << " does not match subcommand "
                      << chosen->app->get_name() << '\n';
            return kExitInvalid;
        }
        chosen->bindings.apply(config.parameters);
    }
    if (seed) config.seed = *seed;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (mc) {
        const Command* owner = chosen;
        if (owner == nullptr) {
            for (const auto& [name, c] : commands) {
                if (std::find(c.kinds.begin(), c.kinds.end(), config.kind) != c.kinds.end()) owner = &c;
            }
        }
        if (owner == nullptr || owner->mc_key.empty()) {
            std::cerr << "--mc does not apply to " << noiselab::harness::to_string(config.kind) << '\n';
            return kExitInvalid;
        }
        config.parameters[owner->mc_key] = *mc;
    }
    return execute(config);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return main_impl(argc, argv);
    } catch (const noiselab::SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << '\n';
        return kExitCap;
    } catch (const noiselab::NumericalContractError& e) {
        std::cerr << "numerical contract: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const noiselab::NotFoundError& e) {
        std::cerr << "not found: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "degenerate input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOther;
    }
}
