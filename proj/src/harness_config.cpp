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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "harness_params.hpp"
#include "noiselab/errors.hpp"
#include "noiselab/harness/config.hpp"
#include "noiselab/matrix_json.hpp"
#include "noiselab/qsim/channel.hpp"
#include "noiselab/qsim/noisy_cat.hpp"
#include "noiselab/qsim/state.hpp"
#include "noiselab/qsim/trajectories.hpp"
#include "noiselab/sampling.hpp"

namespace noiselab::harness {

namespace {

struct KindName {
    ExperimentKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::BosonExact, "boson-exact"},   {ExperimentKind::FermionExact, "fermion-exact"},
    {ExperimentKind::Fourier, "fourier"},          {ExperimentKind::NoiseSweep, "noise-sweep"},
    {ExperimentKind::HermiteCheck, "hermite-check"}, {ExperimentKind::CircuitRun, "circuit-run"},
    {ExperimentKind::NoisyCat, "noisy-cat"},       {ExperimentKind::Smoothing, "smoothing"},
    {ExperimentKind::Fluctuation, "fluctuation"},
};

}  // namespace

std::string to_string(ExperimentKind kind) {
    for (const auto& k : kKindNames) {
        if (k.kind == kind) return k.name;
    }
    throw std::invalid_argument("unknown experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    for (const auto& k : kKindNames) {
        if (name == k.name) return k.kind;
    }
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
    static const std::vector<ExperimentKind> kinds = [] {
        std::vector<ExperimentKind> out;
        for (const auto& k : kKindNames) out.push_back(k.kind);
        return out;
    }();
    return kinds;
}

std::filesystem::path ExperimentConfig::resolve(const std::string& file) const {
    const std::filesystem::path p(file);
    if (p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    return {{"kind", to_string(config.kind)},
            {"seed", config.seed},
            {"output_dir", config.output_dir.string()},
            {"parameters", config.parameters}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (key != "kind" && key != "seed" && key != "output_dir" && key != "parameters") {
            throw std::invalid_argument("unknown config field '" + key + "'");
        }
    }
    if (!j.contains("kind") || !j["kind"].is_string()) throw std::invalid_argument("config needs a string 'kind'");
    ExperimentConfig c;
    c.kind = experiment_kind_from_string(j["kind"].get<std::string>());
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw std::invalid_argument("'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) throw std::invalid_argument("'output_dir' must be a string");
        c.output_dir = j["output_dir"].get<std::string>();
    }
    if (j.contains("parameters")) {
        if (!j["parameters"].is_object()) throw std::invalid_argument("'parameters' must be an object");
        c.parameters = j["parameters"];
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config " + path.string() + " is not valid JSON: " + e.what());
    }
    ExperimentConfig c = config_from_json(j);
    c.base_dir = path.parent_path();
    return c;
}

bool Violation::is_cap() const {
    constexpr std::string_view suffix = " cap";
    return constraint.size() >= suffix.size() &&
           std::string_view(constraint).substr(constraint.size() - suffix.size()) == suffix;
}

std::string describe(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += '\n';
        out += v.field + " [" + v.constraint + "]: " + v.message;
    }
    return out;
}

namespace detail {

namespace {

std::string field_name(const std::string& key) { return "parameters." + key; }

std::string show(double x) { return format_double(x); }

}  // namespace

ParamReader::ParamReader(const nlohmann::json& params, std::vector<Violation>& out)
    : params_(params), out_(out), start_(out.size()) {}

bool ParamReader::has(const std::string& key) const { return params_.contains(key); }

void ParamReader::fail(const std::string& key, const std::string& constraint, const std::string& message) {
    out_.push_back({field_name(key), constraint, message});
}

long long ParamReader::integer(const std::string& key, long long fallback, long long lo, long long hi,
                               const std::string& constraint) {
    seen_.insert(key);
    if (!params_.contains(key)) return fallback;
    const auto& v = params_[key];
    if (!v.is_number_integer()) {
        fail(key, "type", "expected an integer");
        return fallback;
    }
    const long long x = v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)
                            ? hi + 1
                            : v.get<long long>();
    if (x < lo) {
        fail(key, "range", "must be at least " + std::to_string(lo) + ", got " + std::to_string(x));
    } else if (x > hi) {
        fail(key, constraint, "must be at most " + std::to_string(hi) + ", got " + v.dump());
    }
    return x;
}

double ParamReader::real(const std::string& key, double fallback, double lo, double hi, const std::string& constraint) {
    seen_.insert(key);
    if (!params_.contains(key)) return fallback;
    const auto& v = params_[key];
    if (!v.is_number()) {
        fail(key, "type", "expected a number");
        return fallback;
    }
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi)) {
        fail(key, constraint, "must lie in [" + show(lo) + ", " + show(hi) + "], got " + show(x));
    }
    return x;
}

bool ParamReader::flag(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!params_.contains(key)) return fallback;
    if (!params_[key].is_boolean()) {
        fail(key, "type", "expected true or false");
        return fallback;
    }
    return params_[key].get<bool>();
}

std::string ParamReader::text(const std::string& key, const std::string& fallback) {
    seen_.insert(key);
    if (!params_.contains(key)) return fallback;
    if (!params_[key].is_string()) {
        fail(key, "type", "expected a string");
        return fallback;
    }
    return params_[key].get<std::string>();
}

std::string ParamReader::choice(const std::string& key, const std::string& fallback,
                                const std::vector<std::string>& allowed) {
    const std::string value = text(key, fallback);
    if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
        std::string options;
        for (const auto& a : allowed) options += (options.empty() ? "" : ", ") + a;
        fail(key, "choice", "'" + value + "' is not one of " + options);
        return fallback;
    }
    return value;
}

std::vector<long long> ParamReader::integers(const std::string& key, const std::vector<long long>& fallback,
                                             long long lo, long long hi, const std::string& constraint) {
    seen_.insert(key);
    if (!params_.contains(key)) return fallback;
    const auto& v = params_[key];
    if (!v.is_array()) {
        fail(key, "type", "expected a list of integers");
        return fallback;
    }
    std::vector<long long> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) {
            fail(key, "type", "expected a list of integers");
            return fallback;
        }
        const long long x = e.get<long long>();
        if (x < lo) {
            fail(key, "range", "entries must be at least " + std::to_string(lo) + ", got " + std::to_string(x));
        } else if (x > hi) {
            fail(key, constraint, "entries must be at most " + std::to_string(hi) + ", got " + std::to_string(x));
        }
        out.push_back(x);
    }
    return out;
}

std::vector<double> ParamReader::reals(const std::string& key, const std::vector<double>& fallback, double lo,
                                       double hi, const std::string& constraint) {
    seen_.insert(key);
    if (!params_.contains(key)) return fallback;
    const auto& v = params_[key];
    if (!v.is_array()) {
        fail(key, "type", "expected a list of numbers");
        return fallback;
    }
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) {
            fail(key, "type", "expected a list of numbers");
            return fallback;
        }
        const double x = e.get<double>();
        if (!(x >= lo && x <= hi)) {
            fail(key, constraint, "entries must lie in [" + show(lo) + ", " + show(hi) + "], got " + show(x));
        }
        out.push_back(x);
    }
    return out;
}

void ParamReader::finish() {
    for (const auto& [key, _] : params_.items()) {
        if (!seen_.count(key)) fail(key, "unknown parameter", "not used by this experiment kind");
    }
}

namespace {

constexpr long long kMaxSize = 1'000'000;

ExactParams parse_exact(const ExperimentConfig& c, ParamReader& r, bool boson) {
    ExactParams p;
    if (r.has("matrix")) {
        const auto path = c.resolve(r.text("matrix", ""));
        for (const char* key : {"n", "m", "ensemble"}) {
            if (r.has(key)) r.fail(key, "conflict", "sizes come from the matrix file");
            r.skip(key);
        }
        if (!std::filesystem::exists(path)) {
            r.fail("matrix", "file exists", "no such file: " + path.string());
        } else {
            try {
                p.matrix = load_matrix(path);
                p.n = static_cast<int>(p.matrix->rows());
                p.m = static_cast<int>(p.matrix->cols());
            } catch (const std::exception& e) {
                r.fail("matrix", "matrix format", e.what());
                return p;
            }
        }
    } else {
        p.n = static_cast<int>(r.integer("n", 2, 1, kRyserLimit, "size cap"));
        p.m = static_cast<int>(r.integer("m", 2LL * p.n, 1, kMaxSize, "size cap"));
        p.ensemble = input_ensemble_from_string(r.choice("ensemble", "haar", {"haar", "gaussian"}));
        if (p.ensemble == InputEnsemble::Haar && p.n > p.m) {
            r.fail("m", "shape", "Haar rows need n <= m");
        }
    }
    if (!boson && p.n > p.m) r.fail("m", "shape", "fermion outcomes need n <= m");
    if (r.ok()) {
        const std::uint64_t count = boson ? count_multisets(p.m, p.n) : count_subsets(p.m, p.n);
        if (count > kEnumerationCap) {
            r.fail(r.has("matrix") ? "matrix" : "n", "enumeration cap",
                   std::to_string(count) + " outcomes for n = " + std::to_string(p.n) + ", m = " +
                       std::to_string(p.m) + " exceed the limit of " + std::to_string(kEnumerationCap));
        }
    }
    p.samples = static_cast<std::size_t>(r.integer("samples", 0, 0, kMaxSamples, "sample cap"));
    p.cross_check = r.flag("cross_check", false);
    if (p.cross_check && p.n > kNaiveLimit) {
        r.fail("cross_check", "naive oracle cap",
               "brute-force cross-check supports n <= " + std::to_string(kNaiveLimit));
    }
    return p;
}

FourierParams parse_fourier(ParamReader& r) {
    FourierParams p;
    p.function = r.choice("function", "majority", {"dictator", "parity", "majority", "random", "table"});
    if (p.function == "table") {
        const auto values = r.integers("values", {}, -1, 1);
        const std::size_t size = values.size();
        if (size < 2 || (size & (size - 1)) != 0) {
            r.fail("values", "shape", "truth table length must be a power of two, at least 2");
        } else {
            p.bits = std::countr_zero(size);
            if (p.bits > kFourierMaxBits) r.fail("values", "fourier cap", "at most 2^20 entries");
        }
        for (long long v : values) {
            if (v != 1 && v != -1) {
                r.fail("values", "range", "truth table entries must be +1 or -1");
                break;
            }
            p.values.push_back(static_cast<int>(v));
        }
        if (r.has("bits")) r.fail("bits", "conflict", "bits come from the truth table");
        r.skip("bits");
    } else {
        p.bits = static_cast<int>(r.integer("bits", 3, 1, kFourierMaxBits, "fourier cap"));
        if (p.function == "majority" && p.bits % 2 == 0) r.fail("bits", "odd", "majority needs an odd bit count");
        if (p.function == "dictator") {
            p.variable = static_cast<int>(r.integer("variable", 1, 1, p.bits));
        }
    }
    p.samples = static_cast<std::size_t>(r.integer("samples", 0, 0, kMaxSamples, "sample cap"));
    return p;
}

SweepParams parse_sweep(ParamReader& r) {
    SweepParams p;
    SweepSpec& s = p.spec;
    for (long long n : r.integers("n_values", {2, 3, 4}, 1, kRyserLimit, "size cap")) {
        s.n_values.push_back(static_cast<int>(n));
    }
    s.epsilon_values = r.reals("epsilons", {0.05, 0.1, 0.2, 0.4}, 0.0, 1.0, "epsilon range");
    if (s.n_values.empty()) r.fail("n_values", "non-empty", "need at least one n");
    if (s.epsilon_values.empty()) r.fail("epsilons", "non-empty", "need at least one noise level");
    s.epsilon_over_n = r.flag("epsilon_over_n", false);
    s.ensemble = input_ensemble_from_string(r.choice("ensemble", "gaussian", {"gaussian", "haar"}));
    s.mode_rule = mode_rule_from_string(r.choice("mode_rule", "2n", {"2n", "n2+n", "fixed"}));
    if (s.mode_rule == ModeRule::Fixed) {
        if (!r.has("fixed_modes")) r.fail("fixed_modes", "required", "mode rule 'fixed' needs fixed_modes");
        s.fixed_modes = static_cast<int>(r.integer("fixed_modes", 1, 1, kMaxSize, "size cap"));
    } else if (r.has("fixed_modes")) {
        r.fail("fixed_modes", "conflict", "only used with mode rule 'fixed'");
        r.skip("fixed_modes");
    }
    s.inputs = static_cast<std::size_t>(r.integer("inputs", 20, 1, kMaxTrials, "trial cap"));
    s.mc = static_cast<std::size_t>(r.integer("mc", 2000, 100, kMaxTrials, "trial cap"));
    s.reorthonormalize = r.flag("reorthonormalize", false);
    if (!r.ok()) return p;
    for (int n : s.n_values) {
        const int m = s.modes_for(n);
        if (m < n) {
            r.fail("n_values", "shape", "n = " + std::to_string(n) + " exceeds m = " + std::to_string(m));
        } else if (count_multisets(m, n) > kEnumerationCap) {
            r.fail("n_values", "enumeration cap",
                   "n = " + std::to_string(n) + ", m = " + std::to_string(m) + " has " +
                       std::to_string(count_multisets(m, n)) + " outcomes, over the limit of " +
                       std::to_string(kEnumerationCap));
        }
    }
    return p;
}

HermiteParams parse_hermite(ParamReader& r) {
    HermiteParams p;
    p.degrees.clear();
    for (long long k : r.integers("degrees", {1, 2, 3, 4}, 0, 6, "degree range")) p.degrees.push_back(static_cast<int>(k));
    if (p.degrees.empty()) r.fail("degrees", "non-empty", "need at least one degree");
    p.epsilon = r.real("epsilon", 0.36, 0.0, 1.0, "epsilon range");
    p.mc = static_cast<std::size_t>(r.integer("mc", 100000, 2, 100'000'000, "trial cap"));
    return p;
}

CircuitSource parse_source(const ExperimentConfig& c, ParamReader& r, int qubit_cap, const std::string& cap_name) {
    CircuitSource s;
    if (r.has("circuit")) {
        const auto path = c.resolve(r.text("circuit", ""));
        for (const char* key : {"qubits", "depth"}) {
            if (r.has(key)) r.fail(key, "conflict", "the circuit file fixes qubits and depth");
            r.skip(key);
        }
        if (!std::filesystem::exists(path)) {
            r.fail("circuit", "file exists", "no such file: " + path.string());
            return s;
        }
        try {
            s.circuit = load_circuit(path);
        } catch (const SizeLimitError& e) {
            r.fail("circuit", cap_name, e.what());
            return s;
        } catch (const std::exception& e) {
            r.fail("circuit", "circuit format", e.what());
            return s;
        }
        s.qubits = s.circuit->num_qubits();
        s.depth = s.circuit->depth();
        if (s.qubits > qubit_cap) {
            r.fail("circuit", cap_name, "circuit has " + std::to_string(s.qubits) + " qubits; limit is " +
                                            std::to_string(qubit_cap));
        }
    } else {
        s.qubits = static_cast<int>(r.integer("qubits", 2, 1, qubit_cap, cap_name));
        s.depth = static_cast<std::size_t>(r.integer("depth", 5, 0, 100000, "depth cap"));
    }
    return s;
}

void check_model(ParamReader& r, const std::string& model, double rate, double correlation) {
    if (!r.ok()) return;
    try {
        (void)ErrorModel::from_name(model, rate, correlation);
    } catch (const std::exception& e) {
        r.fail("model", "error model", e.what());
    }
}

const std::vector<std::string> kModelNames = {"none", "independent", "pairwise", "synchronized", "all-or-none"};

CircuitParams parse_circuit(const ExperimentConfig& c, ParamReader& r) {
    CircuitParams p;
    p.source = parse_source(c, r, kMaxPureQubits, "trajectory cap");
    p.model = r.choice("model", "independent", kModelNames);
    p.rate = r.real("rate", 0.01, 0.0, 1.0, "rate range");
    p.correlation = r.real("correlation", 0.0, 0.0, 1.0, "correlation range");
    p.trials = static_cast<std::size_t>(r.integer("trials", 1000, 1, kMaxTrials, "trial cap"));
    p.simulate_state = r.flag("simulate_state", true);
    if (p.trials * std::max<std::size_t>(p.source.depth, 1) > kMaxTrials) {
        r.fail("trials", "trace cap", "trials x depth must stay below " + std::to_string(kMaxTrials) + " records");
    }
    check_model(r, p.model, p.rate, p.correlation);
    return p;
}

NoisyCatParams parse_noisy_cat(ParamReader& r) {
    NoisyCatParams p;
    const auto spec = r.reals("spec", {0.9, 0.04, 0.04, 0.02}, 0.0, 1.0, "probability range");
    if (spec.size() != 4) {
        r.fail("spec", "shape", "expected [p00, p01, p10, p11]");
    } else {
        std::copy(spec.begin(), spec.end(), p.spec.begin());
    }
    p.state = r.choice("state", "cat", {"cat", "product", "partial"});
    p.theta = r.real("theta", std::numbers::pi / 6, 0.0, 2.0 * std::numbers::pi);
    if (r.has("theta") && p.state != "partial") r.fail("theta", "conflict", "theta only applies to state 'partial'");
    p.kernel = r.choice("kernel", "min-power", {"min-power", "geometric-power"});
    p.alpha = r.real("alpha", 1.5, 1.0, 2.0, "alpha range");
    if (p.alpha == 1.0 || p.alpha == 2.0) r.fail("alpha", "alpha range", "alpha must lie strictly between 1 and 2");
    if (!r.ok()) return p;
    try {
        (void)error_correlation(CorrelatedNoiseSpec(p.spec[0], p.spec[1], p.spec[2], p.spec[3]));
    } catch (const DegenerateInputError& e) {
        r.fail("spec", "degenerate spec", e.what());
    } catch (const std::exception& e) {
        r.fail("spec", "noise spec", e.what());
    }
    return p;
}

SmoothingParams parse_smoothing(const ExperimentConfig& c, ParamReader& r) {
    SmoothingParams p;
    p.source = parse_source(c, r, kMaxDensityQubits, "density cap");
    p.rate = r.real("rate", 0.05, 0.0, 1.0, "rate range");
    if (!r.ok()) return p;
    // Each output channel keeps up to 16 Kraus operators per step, one
    // 2^n x 2^n matrix each, and there is one output channel per step.
    const double steps = static_cast<double>(p.source.depth);
    const double entries = steps * steps * 16.0 * std::ldexp(1.0, 2 * p.source.qubits);
    if (entries > static_cast<double>(kSmoothingEntryCap)) {
        r.fail(r.has("circuit") ? "circuit" : "depth", "smoothing size cap",
               "depth " + std::to_string(p.source.depth) + " on " + std::to_string(p.source.qubits) +
                   " qubits needs too many Kraus operators");
    }
    return p;
}

FluctuationParams parse_fluctuation(ParamReader& r) {
    FluctuationParams p;
    p.model = r.choice("model", "independent", kModelNames);
    p.rate = r.real("rate", 0.1, 0.0, 1.0, "rate range");
    p.correlation = r.real("correlation", 0.3, 0.0, 1.0, "correlation range");
    p.n_values.clear();
    for (long long n : r.integers("n_values", {8, 16, 32, 64}, 1, kMaxSize, "size cap")) {
        p.n_values.push_back(static_cast<int>(n));
    }
    if (p.n_values.size() < 2 || !std::is_sorted(p.n_values.begin(), p.n_values.end()) ||
        std::adjacent_find(p.n_values.begin(), p.n_values.end()) != p.n_values.end()) {
        r.fail("n_values", "ascending", "need at least two strictly increasing qubit counts");
    }
    p.trials = static_cast<std::size_t>(r.integer("trials", 10000, 2, kMaxTrials, "trial cap"));
    check_model(r, p.model, p.rate, p.correlation);
    if (r.ok() && (p.model == "none" || p.rate == 0.0 || p.rate == 1.0)) {
        r.fail("rate", "degenerate model", "a fluctuation exponent needs 0 < rate < 1 and a noisy model");
    }
    return p;
}

}  // namespace

KindParams parse_parameters(const ExperimentConfig& config, std::vector<Violation>& out) {
    ParamReader r(config.parameters, out);
    KindParams p;
    switch (config.kind) {
        case ExperimentKind::BosonExact:
            p = parse_exact(config, r, true);
            break;
        case ExperimentKind::FermionExact:
            p = parse_exact(config, r, false);
            break;
        case ExperimentKind::Fourier:
            p = parse_fourier(r);
            break;
        case ExperimentKind::NoiseSweep:
            p = parse_sweep(r);
            break;
        case ExperimentKind::HermiteCheck:
            p = parse_hermite(r);
            break;
        case ExperimentKind::CircuitRun:
            p = parse_circuit(config, r);
            break;
        case ExperimentKind::NoisyCat:
            p = parse_noisy_cat(r);
            break;
        case ExperimentKind::Smoothing:
            p = parse_smoothing(config, r);
            break;
        case ExperimentKind::Fluctuation:
            p = parse_fluctuation(r);
            break;
    }
    r.finish();
    return p;
}

}  // namespace detail

std::vector<Violation> validate(const ExperimentConfig& config) {
    std::vector<Violation> out;
    if (config.output_dir.empty()) out.push_back({"output_dir", "required", "output directory must be set"});
    if (!config.parameters.is_object()) {
        out.push_back({"parameters", "type", "parameters must be a JSON object"});
        return out;
    }
    (void)detail::parse_parameters(config, out);
    return out;
}

}  // namespace noiselab::harness
