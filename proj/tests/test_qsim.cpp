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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "noiselab/errors.hpp"
#include "noiselab/parallel.hpp"
#include "noiselab/qsim/channel.hpp"
#include "noiselab/qsim/circuit.hpp"
#include "noiselab/qsim/measures.hpp"
#include "noiselab/qsim/noisy_cat.hpp"
#include "noiselab/qsim/state.hpp"
#include "noiselab/qsim/trajectories.hpp"
#include "oracles.hpp"

using namespace noiselab;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

PureState cat_state() {
    PureState s(2);
    s.apply(Gate::h(0));
    s.apply(Gate::cnot(0, 1));
    return s;
}

PureState random_pure(int n, SeededRng& rng) {
    Eigen::VectorXcd v(std::size_t{1} << n);
    for (auto& a : v) a = rng.complex_normal();
    return PureState(n, v / v.norm());
}

DensityState random_mixed(int n, SeededRng& rng) {
    ComplexMatrix a(1 << n, 1 << n);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.complex_normal();
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    rho = (rho + rho.adjoint()).eval() / 2.0;
    return DensityState(n, rho);
}

Circuit identity_circuit(int n, std::size_t depth) {
    Circuit c(n);
    for (std::size_t t = 0; t < depth; ++t) c.append(Gate::unitary({0}, ComplexMatrix::Identity(2, 2)));
    return c;
}

}  // namespace

TEST(Gates, hadamard_and_bell_state) {
    const PureState plus = apply_gate(PureState(1), Gate::h(0));
    EXPECT_NEAR(plus.amplitudes()[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(plus.amplitudes()[1].real(), kInvSqrt2, 1e-15);

    const PureState bell = cat_state();
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
    expected[0] = expected[3] = kInvSqrt2;
    EXPECT_LE((bell.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gates, qubit_ordering) {
    // Qubit q is bit q of the basis index.
    EXPECT_EQ(apply_gate(PureState(3), Gate::x(1)).amplitudes()[2], Complex(1.0));
    EXPECT_EQ(apply_gate(PureState::basis(2, 1), Gate::cnot(0, 1)).amplitudes()[3], Complex(1.0));
    EXPECT_EQ(apply_gate(PureState::basis(2, 2), Gate::cnot(0, 1)).amplitudes()[2], Complex(1.0));
    ComplexMatrix x_on_msb = ComplexMatrix::Zero(4, 4);
    x_on_msb(0, 2) = x_on_msb(2, 0) = x_on_msb(1, 3) = x_on_msb(3, 1) = 1.0;
    const int targets[] = {2, 0};
    PureState s(3);
    s.apply_unitary(x_on_msb, targets);
    EXPECT_EQ(s.amplitudes()[4], Complex(1.0));
}

TEST(Gates, inverse_round_trip) {
    SeededRng rng(301);
    const PureState start = random_pure(3, rng);
    const Gate g = Gate::unitary({2, 0}, random_unitary(4, rng));
    const PureState back = apply_gate(apply_gate(start, g), g.inverse());
    EXPECT_LE((back.amplitudes() - start.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
    const Gate t = Gate::t(0);
    EXPECT_LE(max_abs(t.matrix() * t.inverse().matrix() - ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(Gates, validation) {
    EXPECT_THROW(Gate::cnot(1, 1), std::invalid_argument);
    EXPECT_THROW(Gate::unitary({0}, ComplexMatrix::Ones(2, 2)), std::invalid_argument);
    EXPECT_THROW(Gate::unitary({0, 1}, ComplexMatrix::Identity(2, 2)), std::invalid_argument);
    EXPECT_THROW(apply_gate(PureState(2), Gate::h(2)), std::invalid_argument);
    EXPECT_THROW(PureState(1, Eigen::VectorXcd::Ones(2)), std::invalid_argument);
    EXPECT_THROW(PureState(kMaxPureQubits + 1), SizeLimitError);
    EXPECT_THROW(DensityState::maximally_mixed(kMaxDensityQubits + 1), SizeLimitError);
    EXPECT_THROW(DensityState(1, ComplexMatrix::Identity(2, 2)), std::invalid_argument);
    EXPECT_EQ(gate_kind_from_string("cnot"), GateKind::CNOT);
    EXPECT_THROW(gate_kind_from_string("swap"), std::invalid_argument);
}

TEST(Circuits, norm_preserved_on_random_circuits) {
    SeededRng rng(303);
    for (int rep = 0; rep < 100; ++rep) {
        const PureState out = run_circuit(random_circuit(8, 50, rng), PureState(8));
        ASSERT_NEAR(out.norm(), 1.0, 1e-10);
    }
}

TEST(Circuits, density_matches_pure_evolution) {
    SeededRng rng(305);
    const Circuit c = random_circuit(3, 12, rng);
    const PureState psi = run_circuit(c, PureState(3));
    DensityState rho{PureState(3)};
    for (const Gate& g : c.steps()) rho.apply(g);
    EXPECT_LE(max_abs(rho.matrix() - psi.amplitudes() * psi.amplitudes().adjoint()), 1e-12);
}

TEST(Circuits, json_round_trip) {
    SeededRng rng(307);
    const Circuit c = random_circuit(3, 6, rng);
    const Circuit back = circuit_from_json(nlohmann::json::parse(circuit_to_json(c).dump()));
    ASSERT_EQ(back.depth(), c.depth());
    for (std::size_t t = 0; t < c.depth(); ++t) {
        EXPECT_EQ(back.steps()[t].targets(), c.steps()[t].targets());
        EXPECT_EQ(back.step_unitary(t), c.step_unitary(t));
    }
    const auto named = circuit_from_json(nlohmann::json::parse(
        R"({"n_qubits": 2, "gates": [{"gate": "h", "targets": [0]}, {"gate": "cnot", "targets": [0, 1]}]})"));
    EXPECT_LE((run_circuit(named, PureState(2)).amplitudes() - cat_state().amplitudes()).norm(), 1e-15);
    EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"({"n_qubits": 1, "gates": [{"gate": "u1"}]})")),
                 std::invalid_argument);
    EXPECT_THROW(load_circuit("/nonexistent/circuit.json"), NotFoundError);
}

TEST(Depolarize, examples) {
    const DensityState plus{apply_gate(PureState(1), Gate::h(0))};
    EXPECT_EQ(depolarize(plus, 0, 0.0).matrix(), plus.matrix());

    ComplexMatrix expected(2, 2);
    expected << 0.5, 0.25, 0.25, 0.5;
    EXPECT_LE(max_abs(depolarize(plus, 0, 0.5).matrix() - expected), 1e-15);

    SeededRng rng(309);
    const DensityState full = depolarize(DensityState(random_pure(1, rng)), 0, 1.0);
    EXPECT_LE(max_abs(full.matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
    EXPECT_NEAR(von_neumann_entropy(full.matrix()), 1.0, 1e-12);
    EXPECT_THROW(depolarize(plus, 0, 1.5), std::invalid_argument);
}

TEST(Depolarize, kraus_form_agrees_with_direct_formula) {
    SeededRng rng(311);
    const DensityState s = random_mixed(3, rng);
    for (double p : {0.1, 0.5, 1.0}) {
        const auto ch = KrausChannel::depolarizing(1, p);
        EXPECT_LE(ch.completeness_error(), 1e-14);
        EXPECT_LE(max_abs(apply_channel(s, ch).matrix() - depolarize(s, 1, p).matrix()), 1e-14);
    }
}

TEST(Channels, cptp_on_random_states) {
    SeededRng rng(313);
    for (int rep = 0; rep < 20; ++rep) {
        const DensityState s = random_mixed(3, rng);
        const double r1 = rng.uniform(), r2 = rng.uniform();
        const auto out = correlated_depolarize(s, CorrelatedNoiseSpec::independent(r1, r2, 2, 0));
        const auto diag = diagnose(out);
        EXPECT_LE(diag.trace_error, 1e-8);
        EXPECT_LE(diag.hermiticity_error, 1e-8);
        EXPECT_LE(diag.negativity, 1e-6);
    }
    EXPECT_THROW(KrausChannel({ComplexMatrix::Identity(2, 2) * 0.5}, {0}), std::invalid_argument);
}

TEST(CorrelatedNoise, identity_and_marginals) {
    SeededRng rng(315);
    const DensityState s = random_mixed(2, rng);
    EXPECT_LE(max_abs(correlated_depolarize(s, CorrelatedNoiseSpec(1, 0, 0, 0)).matrix() - s.matrix()), 1e-15);
    const CorrelatedNoiseSpec spec(0.9, 0.04, 0.04, 0.02);
    EXPECT_NEAR(spec.r1(), 0.06, 1e-15);
    EXPECT_NEAR(spec.r2(), 0.06, 1e-15);
    EXPECT_THROW(CorrelatedNoiseSpec(0.9, 0.1, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(CorrelatedNoiseSpec(1.1, -0.1, 0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(CorrelatedNoiseSpec(1, 0, 0, 0, 1, 1), std::invalid_argument);
}

TEST(CorrelatedNoise, product_spec_is_composition) {
    SeededRng rng(317);
    const DensityState s = random_mixed(3, rng);
    const auto spec = CorrelatedNoiseSpec::independent(0.3, 0.7, 0, 2);
    const DensityState composed = depolarize(depolarize(s, 0, 0.3), 2, 0.7);
    EXPECT_LE(max_abs(correlated_depolarize(s, spec).matrix() - composed.matrix()), 1e-10);
}

TEST(ErrorCorrelation, closed_form_values) {
    const double direct = (0.02 - 0.06 * 0.06) / (0.06 * 0.94);
    EXPECT_NEAR(error_correlation(CorrelatedNoiseSpec(0.9, 0.04, 0.04, 0.02)), direct, 1e-12);
    EXPECT_NEAR(direct, 0.2908, 1e-4);
    EXPECT_EQ(error_correlation(CorrelatedNoiseSpec(0.94, 0, 0, 0.06)), 1.0);
    SeededRng rng(319);
    for (int rep = 0; rep < 100; ++rep) {
        const double r1 = 0.01 + 0.98 * rng.uniform(), r2 = 0.01 + 0.98 * rng.uniform();
        ASSERT_EQ(error_correlation(CorrelatedNoiseSpec::independent(r1, r2)), 0.0) << r1 << " " << r2;
        const double p11 = 0.01 + 0.98 * rng.uniform();
        ASSERT_EQ(error_correlation(CorrelatedNoiseSpec(1.0 - p11, 0, 0, p11)), 1.0) << p11;
    }
    EXPECT_THROW(error_correlation(CorrelatedNoiseSpec(1, 0, 0, 0)), DegenerateInputError);
    EXPECT_THROW(error_correlation(CorrelatedNoiseSpec(0, 0, 0.5, 0.5)), DegenerateInputError);
}

TEST(Entropy, examples) {
    EXPECT_NEAR(entanglement_entropy(PureState(2), 0), 0.0, 1e-12);
    EXPECT_NEAR(entanglement_entropy(cat_state(), 0), 1.0, 1e-10);
    EXPECT_NEAR(entanglement_entropy(cat_state(), 1), 1.0, 1e-10);
    const double theta = std::numbers::pi / 6;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v[0] = std::cos(theta);
    v[3] = std::sin(theta);
    const double h = entanglement_entropy(PureState(2, v), 0);
    EXPECT_NEAR(h, oracle::binary_entropy(0.25), 1e-10);
    EXPECT_NEAR(h, 0.8113, 1e-4);
    EXPECT_THROW(entanglement_entropy(cat_state(), 2), std::invalid_argument);
}

TEST(Entropy, invariant_under_local_unitaries) {
    SeededRng rng(321);
    const PureState s = random_pure(2, rng);
    PureState t = s;
    const int q0[] = {0}, q1[] = {1};
    t.apply_unitary(random_unitary(2, rng), q0);
    t.apply_unitary(random_unitary(2, rng), q1);
    EXPECT_NEAR(entanglement_entropy(s, 0), entanglement_entropy(t, 0), 1e-10);
}

TEST(EmergentEntanglement, examples) {
    SeededRng rng(323);
    PureState ghz(3);
    ghz.apply(Gate::h(0));
    ghz.apply(Gate::cnot(0, 1));
    ghz.apply(Gate::cnot(1, 2));
    EXPECT_NEAR(emergent_entanglement(ghz, {0, 1}, rng, 100), 0.0, 1e-10);
    PureState cat_and_zero(3);
    cat_and_zero.apply(Gate::h(0));
    cat_and_zero.apply(Gate::cnot(0, 1));
    EXPECT_NEAR(emergent_entanglement(cat_and_zero, {0, 1}, rng, 100), 1.0, 1e-10);
    EXPECT_NEAR(emergent_entanglement(PureState(4), {1, 3}, rng, 100), 0.0, 1e-10);
    EXPECT_THROW(emergent_entanglement(ghz, {0, 0}, rng, 100), std::invalid_argument);
    EXPECT_THROW(emergent_entanglement(cat_state(), {0, 1}, rng, 100), std::invalid_argument);
}

TEST(NoisyCat, margins) {
    const CorrelatedNoiseSpec independent = CorrelatedNoiseSpec::independent(0.06, 0.06);
    const auto fail = noisy_cat_check(1.0, independent);
    EXPECT_FALSE(fail.pass);
    EXPECT_NEAR(fail.margin, -std::pow(0.06, 1.5), 1e-12);
    EXPECT_NEAR(fail.margin, -0.0147, 1e-4);
    EXPECT_TRUE(noisy_cat_check(0.0, independent).pass);
    EXPECT_TRUE(noisy_cat_check(1.0, CorrelatedNoiseSpec(0.94, 0, 0, 0.06)).pass);
}

TEST(NoisyCat, kernel_families) {
    const NoisyCatConfig def;
    EXPECT_EQ(def.name(), "min-power");
    EXPECT_EQ(def.alpha(), 1.5);
    for (const auto& cfg : {def, NoisyCatConfig::from_name("geometric-power", 1.2)}) {
        // Kernel dominates min(x, y)^2 near the origin.
        double prev = 0.0;
        for (double x : {1e-2, 1e-4, 1e-6}) {
            const double ratio = cfg.kernel(x, 2 * x) / (x * x);
            EXPECT_GT(ratio, prev);
            prev = ratio;
        }
    }
    EXPECT_THROW(NoisyCatConfig::from_name("min-power", 2.0), std::invalid_argument);
    EXPECT_THROW(NoisyCatConfig::from_name("linear", 1.5), std::invalid_argument);
}

TEST(TimeSmoothing, identity_circuit_gives_uniform_mixture) {
    const int n = 2;
    const std::vector<KrausChannel> raw = {KrausChannel::depolarizing(0, 0.1), KrausChannel::depolarizing(1, 0.4),
                                           KrausChannel::depolarizing(0, 0.9)};
    const auto smoothed = time_smoothed_channels(identity_circuit(n, raw.size()), raw);
    const ComplexMatrix mixture = transfer_matrix(uniform_mixture(raw, n), n);
    ASSERT_EQ(smoothed.size(), raw.size());
    for (const auto& ch : smoothed) EXPECT_LE(max_abs(transfer_matrix(ch, n) - mixture), 1e-12);
}

TEST(TimeSmoothing, single_step_is_unchanged) {
    const std::vector<KrausChannel> raw = {KrausChannel::depolarizing(1, 0.3)};
    SeededRng rng(325);
    const auto smoothed = time_smoothed_channels(random_circuit(2, 1, rng), raw);
    EXPECT_LE(max_abs(transfer_matrix(smoothed[0], 2) - transfer_matrix(raw[0], 2)), 1e-15);
}

TEST(TimeSmoothing, random_circuits_stay_trace_preserving) {
    SeededRng rng(327);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t depth = 1 + rng.below(5);
        std::vector<KrausChannel> raw;
        for (std::size_t t = 0; t < depth; ++t)
            raw.push_back(KrausChannel::depolarizing(static_cast<int>(rng.below(2)), rng.uniform()));
        for (const auto& ch : time_smoothed_channels(random_circuit(2, depth, rng), raw)) {
            ASSERT_LE(ch.completeness_error(), 1e-8);
        }
    }
    EXPECT_THROW(time_smoothed_channels(identity_circuit(2, 2), {KrausChannel::depolarizing(0, 0.1)}),
                 std::invalid_argument);
}

TEST(TimeSmoothing, conjugates_by_circuit_segments) {
    // With raw noise only at step 0, the smoothed channel at step 1 is the
    // step-0 noise carried through the step-0 unitary, mixed with identity.
    const std::vector<KrausChannel> raw = {
        KrausChannel({ComplexMatrix::Identity(2, 2) * std::sqrt(0.5),
                      (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished() * std::sqrt(0.5)},
                     {0}),
        KrausChannel({ComplexMatrix::Identity(2, 2)}, {0})};
    Circuit c(1);
    c.append(Gate::h(0));
    c.append(Gate::x(0));
    const auto smoothed = time_smoothed_channels(c, raw);
    // H X H = Z, so step 1 sees a half-probability Z flip from step 0.
    const ComplexMatrix x = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();
    const ComplexMatrix z = (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished();
    const ComplexMatrix keep = ComplexMatrix::Identity(2, 2) * std::sqrt(0.75);
    const KrausChannel step0({keep, x * 0.5}, {0});
    const KrausChannel step1({keep, z * 0.5}, {0});
    EXPECT_LE(max_abs(transfer_matrix(smoothed[0], 1) - transfer_matrix(step0, 1)), 1e-12);
    EXPECT_LE(max_abs(transfer_matrix(smoothed[1], 1) - transfer_matrix(step1, 1)), 1e-12);
}

TEST(TraceDistance, metric_and_invariance) {
    SeededRng rng(329);
    const DensityState zero{PureState(1)};
    const DensityState one{PureState::basis(1, 1)};
    EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-12);
    for (int rep = 0; rep < 20; ++rep) {
        const DensityState a = random_mixed(2, rng), b = random_mixed(2, rng), c = random_mixed(2, rng);
        EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-12);
        EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-12);
        DensityState ua = a, ub = b;
        const ComplexMatrix u = random_unitary(4, rng);
        const std::vector<int> all = all_qubits(2);
        ua.conjugate(u, all);
        ub.conjugate(u, all);
        EXPECT_NEAR(trace_distance(ua, ub), trace_distance(a, b), 1e-10);
    }
    EXPECT_THROW(trace_distance(zero, DensityState::maximally_mixed(2)), std::invalid_argument);
}

TEST(BivariateNormal, matches_plackett_integral) {
    for (double h : {-1.5, -0.3, 0.0, 1.2}) {
        for (double rho : {0.0, 0.2, 0.6, 0.95}) {
            EXPECT_NEAR(bivariate_normal_equal_cdf(h, rho), oracle::bivariate_equal_cdf_plackett(h, rho), 1e-9)
                << h << " " << rho;
        }
    }
}

TEST(ErrorModels, latent_correlation_hits_event_correlation) {
    for (double rate : {0.05, 0.1, 0.3}) {
        // Threshold h with Phi(h) = rate, by bisection on erfc.
        double lo = -10.0, hi = 10.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (0.5 * std::erfc(-mid / std::numbers::sqrt2) < rate ? lo : hi) = mid;
        }
        for (double corr : {0.1, 0.3, 0.8}) {
            const auto model = ErrorModel::pairwise(rate, corr);
            EXPECT_EQ(model.latent_correlation(), latent_for_event_correlation(rate, corr));
            const double both = oracle::bivariate_equal_cdf_plackett(lo, model.latent_correlation());
            EXPECT_NEAR((both - rate * rate) / (rate * (1 - rate)), corr, 1e-7) << rate << " " << corr;
        }
    }
    EXPECT_EQ(ErrorModel::from_name("all-or-none", 0.2).kind(), ErrorModel::Kind::Synchronized);
    EXPECT_THROW(ErrorModel::from_name("burst", 0.2), std::invalid_argument);
    EXPECT_EQ(ErrorModel::from_spec(CorrelatedNoiseSpec(0.94, 0, 0, 0.06)).kind(), ErrorModel::Kind::Pairwise);
    EXPECT_THROW(ErrorModel::from_spec(CorrelatedNoiseSpec::independent(0.1, 0.2)), std::invalid_argument);
}

TEST(Trajectories, zero_rate_is_clean) {
    SeededRng rng(331);
    const auto res = run_noisy_trajectories(random_circuit(3, 5, rng), ErrorModel::independent(0.0), 20, rng);
    for (const auto& trial : res.trace.corrupted)
        for (const auto& cycle : trial) EXPECT_TRUE(cycle.empty());
    EXPECT_EQ(res.stats.mean_count, 0.0);
    EXPECT_NEAR(res.stats.mean_fidelity, 1.0, 1e-10);
}

TEST(Trajectories, independent_counts_are_binomial) {
    SeededRng rng(333);
    const int n = 10;
    const double p = 0.1;
    const auto res = run_noisy_trajectories(identity_circuit(n, 10), ErrorModel::independent(p), 1000, rng, false);
    const double sd = std::sqrt(n * p * (1 - p));
    EXPECT_NEAR(res.stats.mean_count, n * p, 3 * sd / 100);
    EXPECT_NEAR(res.stats.std_count, sd, 0.03);
    EXPECT_NEAR(res.stats.raw_rate, p, 0.005);
    EXPECT_NEAR(res.stats.survival_rate, p, 0.01);
    EXPECT_FALSE(res.stats.has_fidelity);
}

TEST(Trajectories, synchronized_counts_are_bimodal) {
    SeededRng rng(335);
    const int n = 6;
    const auto res = run_noisy_trajectories(identity_circuit(n, 10), ErrorModel::synchronized(0.2), 500, rng, false);
    const auto& hist = res.stats.histogram;
    std::size_t middle = 0;
    for (int k = 1; k < n; ++k) middle += hist[k];
    EXPECT_EQ(middle, 0u);
    EXPECT_GT(hist[0], 0u);
    EXPECT_GT(hist[n], 0u);
    EXPECT_NEAR(static_cast<double>(hist[n]) / 5000.0, 0.2, 0.02);
}

TEST(Trajectories, csv_and_threads) {
    SeededRng a(337), b(337);
    const Circuit c = identity_circuit(4, 3);
    const auto model = ErrorModel::pairwise(0.2, 0.3);
    set_worker_threads(1);
    const auto serial = run_noisy_trajectories(c, model, 50, a);
    set_worker_threads(4);
    const auto threaded = run_noisy_trajectories(c, model, 50, b);
    set_worker_threads(1);
    EXPECT_EQ(error_trace_to_csv(serial.trace), error_trace_to_csv(threaded.trace));
    EXPECT_EQ(serial.stats.mean_fidelity, threaded.stats.mean_fidelity);
    const std::string csv = error_trace_to_csv(serial.trace);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "trial,cycle,corrupted_count,corrupted_mask_hex");
    EXPECT_EQ(corrupted_mask_hex({0, 5}), "21");
    EXPECT_EQ(corrupted_mask_hex({}), "0");
}

TEST(Fluctuations, scaling_exponents) {
    const std::vector<int> sizes = {8, 16, 32, 64};
    SeededRng rng(339);
    const auto ind = fluctuation_scaling(ErrorModel::independent(0.1), sizes, 10000, rng);
    EXPECT_NEAR(ind.fitted_exponent, 0.5, 0.1);
    const auto sync = fluctuation_scaling(ErrorModel::synchronized(0.1), sizes, 10000, rng);
    EXPECT_NEAR(sync.fitted_exponent, 1.0, 0.1);
    const auto pair = fluctuation_scaling(ErrorModel::pairwise(0.1, 0.3), sizes, 10000, rng);
    EXPECT_GT(pair.fitted_exponent, 0.6);
    const std::string csv = fluctuation_to_csv(pair);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "N,mean,std,fitted_exponent");
    EXPECT_THROW(fluctuation_scaling(ErrorModel::independent(0.0), sizes, 100, rng), DegenerateInputError);
    EXPECT_THROW(fluctuation_scaling(ErrorModel::independent(0.1), {16, 8}, 100, rng), std::invalid_argument);
}
