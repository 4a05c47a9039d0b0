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
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unistd.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "harness_params.hpp"
#include "noiselab/ensembles.hpp"
#include "noiselab/errors.hpp"
#include "noiselab/harness/runner.hpp"
#include "noiselab/matrix_json.hpp"
#include "noiselab/noise.hpp"
#include "noiselab/qsim/channel.hpp"
#include "noiselab/qsim/measures.hpp"
#include "noiselab/qsim/noisy_cat.hpp"
#include "noiselab/qsim/trajectories.hpp"
#include "noiselab/sampling.hpp"

#ifndef NOISELAB_BUILD_ID
#define NOISELAB_BUILD_ID "unknown"
#endif

namespace noiselab::harness {

using nlohmann::json;
using namespace detail;

namespace {

constexpr const char* kSummaryFile = "summary.json";
constexpr const char* kRunInfoFile = "run_info.json";

template <typename F>
auto with_context(const std::string& context, F&& body) {
    try {
        return body();
    } catch (const SizeLimitError& e) {
        throw SizeLimitError(context + ": " + e.what());
    } catch (const NumericalContractError& e) {
        throw NumericalContractError(context + ": " + e.what());
    } catch (const NotFoundError& e) {
        throw NotFoundError(context + ": " + e.what());
    } catch (const DegenerateInputError& e) {
        throw DegenerateInputError(context + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(context + ": " + e.what());
    }
}

std::string csv_row(std::initializer_list<std::string> fields) {
    std::string out;
    for (const auto& f : fields) {
        if (!out.empty()) out += ',';
        out += f;
    }
    return out + '\n';
}

std::string num(double x) { return format_double(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

// Expected total variation between a k-sample empirical distribution and
// its source, from the normal approximation to each cell count.
double expected_empirical_tv(const OutcomeDistribution& d, std::size_t k) {
    double total = 0.0;
    for (double p : d.probs) total += std::sqrt(std::max(0.0, p * (1.0 - p)));
    return 0.5 * total * std::sqrt(2.0 / (std::numbers::pi * static_cast<double>(k)));
}

void add_samples(const OutcomeDistribution& d, std::size_t k, SeededRng rng, ExperimentResult& r, json& stats) {
    if (k == 0) return;
    const auto draws = sample(d, rng, k);
    std::string csv = "draw,outcome\n";
    std::vector<double> freq(d.size(), 0.0);
    for (std::size_t i = 0; i < draws.size(); ++i) {
        csv += std::to_string(i) + ",\"" + outcome_label(d.outcomes[draws[i]]) + "\"\n";
        freq[draws[i]] += 1.0;
    }
    const double total = d.total();
    double tv = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) tv += std::abs(freq[i] / static_cast<double>(k) - d.probs[i] / total);
    r.tables.push_back({"samples.csv", std::move(csv)});
    stats["samples"] = k;
    stats["empirical_tv"] = 0.5 * tv;
    stats["empirical_tv_expected"] = expected_empirical_tv(normalized(d), k);
}

void run_exact(const ExperimentConfig& c, const ExactParams& p, SeededRng& root, ExperimentResult& r) {
    const bool boson = c.kind == ExperimentKind::BosonExact;
    json& stats = r.summary["statistics"];
    ComplexMatrix m;
    if (p.matrix) {
        m = *p.matrix;
        stats["matrix_source"] = "file";
    } else {
        SeededRng rng = root.derive("input-matrix", 0);
        m = p.ensemble == InputEnsemble::Haar ? haar_rows(p.n, p.m, rng) : gaussian_matrix(p.n, p.m, rng);
        stats["matrix_source"] = to_string(p.ensemble);
        r.tables.push_back({"matrix.json", matrix_to_json(m).dump(2) + "\n"});
    }
    const OutcomeDistribution d = boson ? boson_distribution(m) : fermion_distribution(m);
    r.tables.insert(r.tables.begin(), {"distribution.csv", distribution_to_csv(d)});
    stats["n"] = m.rows();
    stats["m"] = m.cols();
    stats["outcomes"] = d.size();
    stats["total_mass"] = d.total();
    stats["max_probability"] = *std::max_element(d.probs.begin(), d.probs.end());
    if (p.cross_check) {
        double worst = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const ComplexMatrix a = submatrix(m, d.outcomes[i]);
            const double exact = boson ? std::norm(per_naive(a)) / d.outcomes[i].repetition_factorial()
                                       : std::norm(det_naive(a));
            worst = std::max(worst, std::abs(exact - d.probs[i]));
        }
        stats["cross_check_max_abs_deviation"] = worst;
    }
    add_samples(d, p.samples, root.derive("samples", 0), r, stats);
}

void run_fourier(const FourierParams& p, SeededRng& root, ExperimentResult& r) {
    json& stats = r.summary["statistics"];
    const BooleanFunction f = [&] {
        if (p.function == "dictator") return BooleanFunction::dictator(p.bits, p.variable);
        if (p.function == "parity") return BooleanFunction::parity(p.bits);
        if (p.function == "majority") return BooleanFunction::majority(p.bits);
        if (p.function == "table") return BooleanFunction(p.bits, p.values);
        SeededRng rng = root.derive("boolean-function", 0);
        return BooleanFunction::random(p.bits, rng);
    }();
    const OutcomeDistribution d = fourier_distribution(f);
    r.tables.push_back({"distribution.csv", distribution_to_csv(d)});
    std::vector<double> levels(static_cast<std::size_t>(p.bits) + 1, 0.0);
    for (std::size_t s = 0; s < d.size(); ++s) levels[d.outcomes[s].total()] += d.probs[s];
    stats["bits"] = p.bits;
    stats["function"] = p.function;
    stats["total_weight"] = d.total();
    stats["weight_by_degree"] = levels;
    add_samples(d, p.samples, root.derive("samples", 0), r, stats);
}

void run_sweep(const SweepParams& p, SeededRng& root, ExperimentResult& r) {
    const SensitivityCurve curve = sensitivity_sweep(p.spec, root);
    r.tables.push_back({"sensitivity.csv", sensitivity_to_csv(curve)});
    json cells = json::array();
    for (const auto& cell : curve.cells) {
        cells.push_back({{"n", cell.n},
                         {"m", cell.m},
                         {"epsilon", cell.epsilon},
                         {"correlation", cell.correlation},
                         {"correlation_std_error", cell.std_error},
                         {"tv", cell.tv},
                         {"tv_std_error", cell.tv_std_error}});
    }
    json& stats = r.summary["statistics"];
    stats["cells"] = std::move(cells);
    stats["inputs_per_cell"] = curve.inputs;
    stats["mc_samples"] = curve.mc_samples;
    stats["mode_rule"] = to_string(p.spec.mode_rule);
    stats["ensemble"] = to_string(p.spec.ensemble);
}

void run_hermite(const HermiteParams& p, SeededRng& root, ExperimentResult& r) {
    std::string csv = "degree,epsilon,estimate,stderr,expected,mc_samples\n";
    json rows = json::array();
    for (int k : p.degrees) {
        SeededRng rng = root.derive("hermite-degree", static_cast<std::uint64_t>(k));
        const DampingEstimate e = hermite_damping_check(k, NoiseLevel(p.epsilon), p.mc, rng);
        csv += csv_row({num(e.degree), num(e.epsilon), num(e.estimate), num(e.std_error), num(e.expected),
                        num(e.mc_samples)});
        const double z = e.std_error > 0.0 ? (e.estimate - e.expected) / e.std_error : 0.0;
        rows.push_back({{"degree", e.degree},
                        {"estimate", e.estimate},
                        {"std_error", e.std_error},
                        {"expected", e.expected},
                        {"z_score", z}});
    }
    r.tables.push_back({"hermite.csv", std::move(csv)});
    json& stats = r.summary["statistics"];
    stats["epsilon"] = p.epsilon;
    stats["mc_samples"] = p.mc;
    stats["degrees"] = std::move(rows);
}

Circuit make_circuit(const CircuitSource& s, SeededRng& root, ExperimentResult& r) {
    if (s.circuit) return *s.circuit;
    SeededRng rng = root.derive("random-circuit", 0);
    Circuit c = random_circuit(s.qubits, s.depth, rng);
    r.tables.push_back({"circuit.json", circuit_to_json(c).dump(2) + "\n"});
    return c;
}

void run_circuit(const CircuitParams& p, SeededRng& root, ExperimentResult& r) {
    const Circuit c = make_circuit(p.source, root, r);
    const auto model = ErrorModel::from_name(p.model, p.rate, p.correlation);
    SeededRng rng = root.derive("trajectories", 0);
    const auto res = run_noisy_trajectories(c, model, p.trials, rng, p.simulate_state);
    r.tables.insert(r.tables.begin(), {"error_trace.csv", error_trace_to_csv(res.trace)});

    const int n = c.num_qubits();
    const auto& st = res.stats;
    const double records = static_cast<double>(p.trials * c.depth());
    std::size_t at_risk = 0;
    for (const auto& trial : res.trace.corrupted) {
        int survivors = n;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (const auto& hit : trial) {
            at_risk += static_cast<std::size_t>(survivors);
            for (int q : hit) {
                if (!seen[q]) {
                    seen[q] = true;
                    --survivors;
                }
            }
        }
    }
    json& stats = r.summary["statistics"];
    stats["qubits"] = n;
    stats["depth"] = c.depth();
    stats["trials"] = p.trials;
    stats["model"] = model.name();
    stats["rate"] = model.rate();
    if (model.kind() == ErrorModel::Kind::Pairwise) {
        stats["event_correlation"] = model.correlation();
        stats["latent_correlation"] = model.latent_correlation();
    }
    const double count_se = records > 0 ? st.std_count / std::sqrt(records) : 0.0;
    stats["mean_corrupted"] = st.mean_count;
    stats["mean_corrupted_std_error"] = count_se;
    stats["std_corrupted"] = st.std_count;
    stats["raw_rate"] = st.raw_rate;
    stats["raw_rate_std_error"] = count_se / n;
    stats["survival_rate"] = st.survival_rate;
    stats["survival_rate_std_error"] =
        at_risk > 0 ? std::sqrt(st.survival_rate * (1.0 - st.survival_rate) / static_cast<double>(at_risk)) : 0.0;
    stats["corrupted_histogram"] = st.histogram;
    if (st.has_fidelity) {
        stats["mean_fidelity"] = st.mean_fidelity;
        stats["mean_fidelity_std_error"] = st.fidelity_std_error;
    }
}

PureState two_qubit_state(const NoisyCatParams& p) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    if (p.state == "product") {
        v[0] = 1.0;
    } else {
        const double theta = p.state == "cat" ? std::numbers::pi / 4 : p.theta;
        v[0] = std::cos(theta);
        v[3] = std::sin(theta);
    }
    return PureState(2, v);
}

void run_noisy_cat(const NoisyCatParams& p, ExperimentResult& r) {
    const CorrelatedNoiseSpec spec(p.spec[0], p.spec[1], p.spec[2], p.spec[3]);
    const PureState psi = two_qubit_state(p);
    const double ent = std::clamp(entanglement_entropy(psi, 0), 0.0, 1.0);
    const auto cfg = NoisyCatConfig::from_name(p.kernel, p.alpha);
    const auto check = noisy_cat_check(ent, spec, cfg);
    const DensityState ideal(psi);
    const double distance = trace_distance(ideal, correlated_depolarize(ideal, spec));

    r.tables.push_back({"noisy_cat.csv",
                        "entanglement,r1,r2,correlation,kernel,margin,pass\n" +
                            csv_row({num(ent), num(spec.r1()), num(spec.r2()), num(check.correlation),
                                     num(check.kernel), num(check.margin), check.pass ? "1" : "0"})});
    json& stats = r.summary["statistics"];
    stats["state"] = p.state;
    stats["entanglement"] = ent;
    stats["r1"] = spec.r1();
    stats["r2"] = spec.r2();
    stats["error_correlation"] = check.correlation;
    stats["kernel_family"] = cfg.name();
    stats["kernel_alpha"] = cfg.alpha();
    stats["kernel_value"] = check.kernel;
    stats["margin"] = check.margin;
    stats["pass"] = check.pass;
    stats["trace_distance_after_noise"] = distance;
    r.summary["notes"].push_back("kernel family is a modelling choice; only its growth near zero is constrained");
}

// Independent depolarization of every qubit the step's gate touches.
KrausChannel step_noise(const Gate& g, double p) {
    const auto single = KrausChannel::depolarizing(0, p).operators();
    std::vector<ComplexMatrix> ops = {ComplexMatrix::Identity(1, 1)};
    for (std::size_t t = 0; t < g.targets().size(); ++t) {
        std::vector<ComplexMatrix> next;
        for (const auto& a : ops) {
            for (const auto& k : single) next.push_back(Eigen::kroneckerProduct(a, k).eval());
        }
        ops = std::move(next);
    }
    return KrausChannel(std::move(ops), g.targets());
}

double purity(const DensityState& s) { return (s.matrix() * s.matrix()).trace().real(); }

void run_smoothing(const SmoothingParams& p, SeededRng& root, ExperimentResult& r) {
    const Circuit c = make_circuit(p.source, root, r);
    std::vector<KrausChannel> raw;
    for (const auto& g : c.steps()) raw.push_back(step_noise(g, p.rate));
    const auto smoothed = time_smoothed_channels(c, raw);

    const PureState zero(c.num_qubits());
    DensityState a(zero), b(zero);
    std::string csv = "step,kraus_operators,completeness_error,trace_distance,raw_purity,smoothed_purity\n";
    double worst = 0.0;
    for (std::size_t t = 0; t < c.depth(); ++t) {
        a = apply_channel(apply_gate(a, c.steps()[t]), raw[t]);
        b = apply_channel(apply_gate(b, c.steps()[t]), smoothed[t]);
        const double err = smoothed[t].completeness_error();
        worst = std::max(worst, err);
        csv += csv_row({num(t), num(smoothed[t].operators().size()), num(err), num(trace_distance(a, b)),
                        num(purity(a)), num(purity(b))});
    }
    r.tables.insert(r.tables.begin(), {"smoothing.csv", std::move(csv)});
    json& stats = r.summary["statistics"];
    stats["qubits"] = c.num_qubits();
    stats["depth"] = c.depth();
    stats["rate"] = p.rate;
    stats["max_completeness_error"] = worst;
    stats["final_trace_distance"] = c.depth() > 0 ? trace_distance(a, b) : 0.0;
    stats["final_raw_purity"] = purity(a);
    stats["final_smoothed_purity"] = purity(b);
}

void run_fluctuation(const FluctuationParams& p, SeededRng& root, ExperimentResult& r) {
    const auto model = ErrorModel::from_name(p.model, p.rate, p.correlation);
    const auto table = fluctuation_scaling(model, p.n_values, p.trials, root);
    r.tables.push_back({"fluctuation.csv", fluctuation_to_csv(table)});
    const double trials = static_cast<double>(p.trials);
    // Relative standard error of a sample standard deviation, normal theory.
    const double log_std_se = 1.0 / std::sqrt(2.0 * (trials - 1.0));
    double mean_x = 0.0;
    for (const auto& row : table.rows) mean_x += std::log(static_cast<double>(row.num_qubits));
    mean_x /= static_cast<double>(table.rows.size());
    double sxx = 0.0;
    json rows = json::array();
    for (const auto& row : table.rows) {
        const double dx = std::log(static_cast<double>(row.num_qubits)) - mean_x;
        sxx += dx * dx;
        rows.push_back({{"N", row.num_qubits},
                        {"mean", row.mean},
                        {"mean_std_error", row.std / std::sqrt(trials)},
                        {"std", row.std},
                        {"std_std_error", row.std * log_std_se}});
    }
    json& stats = r.summary["statistics"];
    stats["model"] = model.name();
    stats["rate"] = model.rate();
    if (model.kind() == ErrorModel::Kind::Pairwise) {
        stats["event_correlation"] = model.correlation();
        stats["latent_correlation"] = model.latent_correlation();
    }
    stats["trials"] = p.trials;
    stats["rows"] = std::move(rows);
    stats["fitted_exponent"] = table.fitted_exponent;
    stats["fitted_exponent_std_error"] = log_std_se / std::sqrt(sxx);
    r.summary["notes"].push_back("standard errors of std and exponent use normal-theory approximations");
}

// The output location is not an input of the experiment; keeping it out of
// the payload makes reruns into different directories byte-identical.
json payload_config(const ExperimentConfig& config) {
    json j = config_to_json(config);
    j.erase("output_dir");
    return j;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + '"';
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("missing payload " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

const PayloadTable* ExperimentResult::table(const std::string& name) const {
    for (const auto& t : tables) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

std::string build_id() { return NOISELAB_BUILD_ID; }

std::string primary_table_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::BosonExact:
        case ExperimentKind::FermionExact:
        case ExperimentKind::Fourier:
            return "distribution.csv";
        case ExperimentKind::NoiseSweep:
            return "sensitivity.csv";
        case ExperimentKind::HermiteCheck:
            return "hermite.csv";
        case ExperimentKind::CircuitRun:
            return "error_trace.csv";
        case ExperimentKind::NoisyCat:
            return "noisy_cat.csv";
        case ExperimentKind::Smoothing:
            return "smoothing.csv";
        case ExperimentKind::Fluctuation:
            return "fluctuation.csv";
    }
    throw std::invalid_argument("unknown experiment kind");
}

std::vector<std::string> plot_columns(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::BosonExact:
        case ExperimentKind::FermionExact:
        case ExperimentKind::Fourier:
            return {"outcome", "prob"};
        case ExperimentKind::NoiseSweep:
            return {"n", "epsilon", "correlation", "stderr"};
        case ExperimentKind::HermiteCheck:
            return {"degree", "estimate", "stderr", "expected"};
        case ExperimentKind::CircuitRun:
            return {"trial", "cycle", "corrupted_count"};
        case ExperimentKind::NoisyCat:
            return {"entanglement", "correlation", "kernel", "margin"};
        case ExperimentKind::Smoothing:
            return {"step", "trace_distance"};
        case ExperimentKind::Fluctuation:
            return {"N", "std", "fitted_exponent"};
    }
    throw std::invalid_argument("unknown experiment kind");
}

ExperimentResult compute(const ExperimentConfig& config) {
    const std::string kind = to_string(config.kind);
    std::vector<Violation> violations;
    if (config.output_dir.empty()) violations.push_back({"output_dir", "required", "output directory must be set"});
    const KindParams params = parse_parameters(config, violations);
    if (!violations.empty()) {
        const std::string msg = kind + " config is invalid:\n" + describe(violations);
        if (std::any_of(violations.begin(), violations.end(), [](const Violation& v) { return v.is_cap(); })) {
            throw SizeLimitError(msg);
        }
        throw std::invalid_argument(msg);
    }

    const auto start = std::chrono::steady_clock::now();
    ExperimentResult r;
    r.config = config;
    r.build_id = build_id();
    r.summary = {{"kind", kind},
                 {"seed", config.seed},
                 {"config", payload_config(config)},
                 {"statistics", json::object()},
                 {"notes", json::array()}};
    // Every random draw descends from (seed, kind); see README.
    SeededRng root = SeededRng(config.seed).derive(kind, 0);

    with_context(kind, [&] {
        std::visit(
            [&](const auto& p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, ExactParams>) run_exact(config, p, root, r);
                if constexpr (std::is_same_v<P, FourierParams>) run_fourier(p, root, r);
                if constexpr (std::is_same_v<P, SweepParams>) run_sweep(p, root, r);
                if constexpr (std::is_same_v<P, HermiteParams>) run_hermite(p, root, r);
                if constexpr (std::is_same_v<P, CircuitParams>) run_circuit(p, root, r);
                if constexpr (std::is_same_v<P, NoisyCatParams>) run_noisy_cat(p, r);
                if constexpr (std::is_same_v<P, SmoothingParams>) run_smoothing(p, root, r);
                if constexpr (std::is_same_v<P, FluctuationParams>) run_fluctuation(p, root, r);
            },
            params);
        return 0;
    });

    json files = json::array();
    for (const auto& t : r.tables) files.push_back(t.name);
    r.summary["payload_files"] = std::move(files);
    r.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    static std::atomic<unsigned> counter{0};
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    std::filesystem::create_directories(dir);
    const auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
                            std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << contents;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_result(const ExperimentResult& r) {
    const auto& dir = r.config.output_dir;
    std::filesystem::create_directories(dir);
    for (const auto& t : r.tables) write_file_atomic(dir / t.name, t.csv);
    write_file_atomic(dir / kSummaryFile, r.summary.dump(2) + "\n");
    const json info = {{"build_id", r.build_id},
                       {"duration_seconds", r.duration_seconds},
                       {"config", config_to_json(r.config)}};
    write_file_atomic(dir / kRunInfoFile, info.dump(2) + "\n");
}

ExperimentResult run(const ExperimentConfig& config) {
    ExperimentResult r = compute(config);
    write_result(r);
    return r;
}

ExperimentResult load_result(const std::filesystem::path& dir) {
    ExperimentResult r;
    try {
        r.summary = json::parse(read_file(dir / kSummaryFile));
        r.config = config_from_json(r.summary.at("config"));
        r.config.output_dir = dir;
        for (const auto& name : r.summary.at("payload_files")) {
            const std::string file = name.get<std::string>();
            r.tables.push_back({file, read_file(dir / file)});
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed result in " + dir.string() + ": " + e.what());
    }
    const auto info_path = dir / kRunInfoFile;
    if (std::filesystem::exists(info_path)) {
        try {
            const json info = json::parse(read_file(info_path));
            r.build_id = info.value("build_id", "");
            r.duration_seconds = info.value("duration_seconds", 0.0);
        } catch (const json::exception&) {
            // run_info.json is informational only.
        }
    }
    return r;
}

std::string emit_plot_data(const ExperimentResult& result) {
    const std::string name = primary_table_name(result.config.kind);
    const PayloadTable* t = result.table(name);
    if (t == nullptr) throw NotFoundError("result has no " + name + " payload");
    const std::vector<std::string> wanted = plot_columns(result.config.kind);

    std::istringstream in(t->csv);
    std::string line;
    std::string out;
    for (const auto& w : wanted) out += (out.empty() ? "" : ",") + w;
    out += '\n';
    if (!std::getline(in, line)) return out;
    const auto header = split_csv_line(line);
    std::vector<std::size_t> index;
    for (const auto& w : wanted) {
        const auto it = std::find(header.begin(), header.end(), w);
        if (it == header.end()) throw std::invalid_argument(name + " lacks column " + w);
        index.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        std::string row;
        for (std::size_t k = 0; k < index.size(); ++k) {
            if (index[k] >= fields.size()) throw std::invalid_argument(name + " has a short row");
            if (k > 0) row += ',';
            row += quote_if_needed(fields[index[k]]);
        }
        out += row + '\n';
    }
    return out;
}

}  // namespace noiselab::harness
