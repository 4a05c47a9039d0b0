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

#include "noiselab/qsim/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/owens_t.hpp>

#include "noiselab/errors.hpp"
#include "noiselab/parallel.hpp"
#include "noiselab/sampling.hpp"

namespace noiselab {

namespace {

void check_rate(double rate) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("error rate must lie in [0, 1]");
}

const boost::math::normal kStandardNormal;

}  // namespace

double bivariate_normal_equal_cdf(double h, double rho) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("correlation must lie in [-1, 1]");
    const double phi = boost::math::cdf(kStandardNormal, h);
    if (rho == 1.0) return phi;
    const double a = std::sqrt((1.0 - rho) / (1.0 + rho));
    return phi - 2.0 * boost::math::owens_t(h, a);
}

double latent_for_event_correlation(double rate, double event_corr) {
    if (!(rate > 0.0 && rate < 1.0)) throw DegenerateInputError("event correlation needs 0 < rate < 1");
    if (!(event_corr >= 0.0 && event_corr <= 1.0)) {
        throw std::invalid_argument("pairwise model supports event correlations in [0, 1]");
    }
    if (event_corr == 0.0) return 0.0;
    if (event_corr == 1.0) return 1.0;
    const double h = boost::math::quantile(kStandardNormal, rate);
    const double target = rate * rate + event_corr * rate * (1.0 - rate);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bivariate_normal_equal_cdf(h, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ErrorModel::ErrorModel(Kind kind, double rate, double correlation)
    : kind_(kind), rate_(rate), correlation_(correlation) {
    check_rate(rate);
    if (kind == Kind::Pairwise) {
        if (rate > 0.0 && rate < 1.0) {
            latent_ = latent_for_event_correlation(rate, correlation);
            threshold_ = boost::math::quantile(kStandardNormal, rate);
        } else if (!(correlation >= 0.0 && correlation <= 1.0)) {
            throw std::invalid_argument("pairwise model supports event correlations in [0, 1]");
        }
    }
}

ErrorModel ErrorModel::none() { return ErrorModel(Kind::None, 0.0, 0.0); }
ErrorModel ErrorModel::independent(double rate) { return ErrorModel(Kind::Independent, rate, 0.0); }
ErrorModel ErrorModel::pairwise(double rate, double correlation) {
    return ErrorModel(Kind::Pairwise, rate, correlation);
}
ErrorModel ErrorModel::synchronized(double rate) { return ErrorModel(Kind::Synchronized, rate, 1.0); }

ErrorModel ErrorModel::from_name(const std::string& name, double rate, double correlation) {
    if (name == "none") return none();
    if (name == "independent") return independent(rate);
    if (name == "pairwise") return pairwise(rate, correlation);
    if (name == "synchronized" || name == "all-or-none") return synchronized(rate);
    throw std::invalid_argument("unsupported error model '" + name + "'");
}

ErrorModel ErrorModel::from_spec(const CorrelatedNoiseSpec& spec) {
    if (std::abs(spec.r1() - spec.r2()) > 1e-12) {
        throw std::invalid_argument("a uniform pairwise model needs equal marginal rates");
    }
    const double rate = spec.r1();
    if (rate == 0.0) return none();
    double corr = 0.0;
    if (rate < 1.0) {
        // Same formula as error_correlation, repeated here to keep the
        // trajectory code free of the noisy-cat module.
        const double cov = spec.p11() * spec.p00() - spec.p10() * spec.p01();
        corr = std::clamp(cov / (rate * (1.0 - rate)), -1.0, 1.0);
    }
    return pairwise(rate, corr);
}

std::string ErrorModel::name() const {
    switch (kind_) {
        case Kind::None:
            return "none";
        case Kind::Independent:
            return "independent";
        case Kind::Pairwise:
            return "pairwise";
        case Kind::Synchronized:
            return "synchronized";
    }
    return "unknown";
}

std::vector<int> ErrorModel::sample_cycle(int num_qubits, SeededRng& rng) const {
    std::vector<int> hit;
    switch (kind_) {
        case Kind::None:
            break;
        case Kind::Independent:
            for (int q = 0; q < num_qubits; ++q) {
                if (rng.uniform() < rate_) hit.push_back(q);
            }
            break;
        case Kind::Synchronized:
            if (rng.uniform() < rate_) {
                for (int q = 0; q < num_qubits; ++q) hit.push_back(q);
            }
            break;
        case Kind::Pairwise: {
            if (rate_ == 0.0) break;
            if (rate_ == 1.0) {
                for (int q = 0; q < num_qubits; ++q) hit.push_back(q);
                break;
            }
            const double shared = std::sqrt(latent_) * rng.normal();
            const double own = std::sqrt(1.0 - latent_);
            for (int q = 0; q < num_qubits; ++q) {
                if (shared + own * rng.normal() < threshold_) hit.push_back(q);
            }
            break;
        }
    }
    return hit;
}

std::string corrupted_mask_hex(const std::vector<int>& qubits) {
    if (qubits.empty()) return "0";
    const int top = *std::max_element(qubits.begin(), qubits.end());
    std::vector<int> nibbles(top / 4 + 1, 0);
    for (int q : qubits) nibbles[q / 4] |= 1 << (q % 4);
    std::string out;
    for (auto it = nibbles.rbegin(); it != nibbles.rend(); ++it) out += "0123456789abcdef"[*it];
    return out;
}

std::string error_trace_to_csv(const ErrorTrace& trace) {
    std::string out = "trial,cycle,corrupted_count,corrupted_mask_hex\n";
    for (std::size_t trial = 0; trial < trace.corrupted.size(); ++trial) {
        for (std::size_t cycle = 0; cycle < trace.corrupted[trial].size(); ++cycle) {
            const auto& hit = trace.corrupted[trial][cycle];
            out += std::to_string(trial) + ',' + std::to_string(cycle) + ',' + std::to_string(hit.size()) + ',' +
                   corrupted_mask_hex(hit) + '\n';
        }
    }
    return out;
}

TrajectoryResult run_noisy_trajectories(const Circuit& c, const ErrorModel& model, std::size_t trials,
                                        SeededRng& rng, bool simulate_state) {
    const int n = c.num_qubits();
    if (n > kMaxPureQubits) throw SizeLimitError("trajectories are limited to 20 qubits");
    const SeededRng base(rng.next_u64());
    const std::size_t cycles = c.depth();

    TrajectoryResult result;
    result.trace.num_qubits = n;
    result.trace.corrupted.resize(trials);
    std::vector<double> fid(trials, 0.0);
    const PureState ideal = simulate_state ? run_circuit(c, PureState(n)) : PureState(1);

    ComplexMatrix paulis[4] = {ComplexMatrix::Identity(2, 2), ComplexMatrix(2, 2), ComplexMatrix(2, 2),
                               ComplexMatrix(2, 2)};
    paulis[1] << 0.0, 1.0, 1.0, 0.0;
    paulis[2] << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    paulis[3] << 1.0, 0.0, 0.0, -1.0;

    parallel_for(trials, [&](std::size_t trial) {
        SeededRng trial_rng = base.derive("trajectory", trial);
        auto& record = result.trace.corrupted[trial];
        record.reserve(cycles);
        if (simulate_state) {
            PureState psi(n);
            for (std::size_t t = 0; t < cycles; ++t) {
                psi.apply(c.steps()[t]);
                record.push_back(model.sample_cycle(n, trial_rng));
                for (int q : record.back()) {
                    const auto which = trial_rng.below(4);
                    if (which != 0) {
                        const int target[] = {q};
                        psi.apply_unitary(paulis[which], target);
                    }
                }
            }
            fid[trial] = fidelity(ideal, psi);
        } else {
            for (std::size_t t = 0; t < cycles; ++t) record.push_back(model.sample_cycle(n, trial_rng));
        }
    });

    TrajectoryStats& st = result.stats;
    st.histogram.assign(static_cast<std::size_t>(n) + 1, 0);
    double sum = 0.0, sum_sq = 0.0;
    std::size_t records = 0, first_hits = 0, at_risk = 0;
    for (const auto& trial : result.trace.corrupted) {
        std::vector<bool> seen(n, false);
        int survivors = n;
        for (const auto& hit : trial) {
            const double k = static_cast<double>(hit.size());
            sum += k;
            sum_sq += k * k;
            ++st.histogram[hit.size()];
            ++records;
            at_risk += static_cast<std::size_t>(survivors);
            for (int q : hit) {
                if (!seen[q]) {
                    seen[q] = true;
                    ++first_hits;
                    --survivors;
                }
            }
        }
    }
    if (records > 0) {
        const double r = static_cast<double>(records);
        st.mean_count = sum / r;
        st.std_count = records > 1 ? std::sqrt(std::max(0.0, (sum_sq - r * st.mean_count * st.mean_count) / (r - 1.0)))
                                   : 0.0;
        st.raw_rate = sum / (r * n);
        st.survival_rate = at_risk > 0 ? static_cast<double>(first_hits) / static_cast<double>(at_risk) : 0.0;
    }
    if (simulate_state && trials > 0) {
        st.has_fidelity = true;
        double f = 0.0;
        for (double x : fid) f += x;
        st.mean_fidelity = f / static_cast<double>(trials);
        if (trials > 1) {
            double ss = 0.0;
            for (double x : fid) ss += (x - st.mean_fidelity) * (x - st.mean_fidelity);
            st.fidelity_std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
        }
    }
    return result;
}

FluctuationTable fluctuation_scaling(const ErrorModel& model, const std::vector<int>& n_values, std::size_t trials,
                                     SeededRng& rng) {
    if (!std::is_sorted(n_values.begin(), n_values.end())) throw std::invalid_argument("N list must be ascending");
    if (trials < 2) throw std::invalid_argument("fluctuation scaling needs at least 2 trials");
    const SeededRng base(rng.next_u64());
    FluctuationTable table;
    table.rows.resize(n_values.size());
    parallel_for(n_values.size(), [&](std::size_t k) {
        const int n = n_values[k];
        if (n < 1) throw std::invalid_argument("qubit counts must be positive");
        SeededRng stream = base.derive("fluctuation", static_cast<std::uint64_t>(n));
        std::vector<double> counts(trials);
        for (auto& c : counts) c = static_cast<double>(model.sample_cycle(n, stream).size());
        double mean = 0.0;
        for (double c : counts) mean += c;
        mean /= static_cast<double>(trials);
        double ss = 0.0;
        for (double c : counts) ss += (c - mean) * (c - mean);
        table.rows[k] = {n, mean, std::sqrt(ss / static_cast<double>(trials - 1))};
    });
    if (table.rows.size() >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (const auto& r : table.rows) {
            if (!(r.std > 0.0)) {
                throw DegenerateInputError("zero fluctuation at N = " + std::to_string(r.num_qubits) +
                                           "; no scaling exponent");
            }
            const double x = std::log(static_cast<double>(r.num_qubits));
            const double y = std::log(r.std);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double m = static_cast<double>(table.rows.size());
        const double denom = m * sxx - sx * sx;
        if (denom == 0.0) throw DegenerateInputError("need at least two distinct N values");
        table.fitted_exponent = (m * sxy - sx * sy) / denom;
    }
    return table;
}

std::string fluctuation_to_csv(const FluctuationTable& table) {
    std::string out = "N,mean,std,fitted_exponent\n";
    for (const auto& r : table.rows) {
        out += std::to_string(r.num_qubits) + ',' + format_double(r.mean) + ',' + format_double(r.std) + ',' +
               format_double(table.fitted_exponent) + '\n';
    }
    return out;
}

}  // namespace noiselab
