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

#include "noiselab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noiselab/ensembles.hpp"
#include "noiselab/errors.hpp"
#include "noiselab/parallel.hpp"

namespace noiselab {

NoiseLevel::NoiseLevel(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("noise level must lie in [0, 1], got " + format_double(epsilon));
    }
}

double NoiseLevel::rho() const { return std::sqrt(1.0 - epsilon_); }

ComplexMatrix apply_matrix_noise(const ComplexMatrix& m, NoiseLevel eps, SeededRng& rng, double entry_variance) {
    if (!(entry_variance > 0.0)) throw std::invalid_argument("entry variance must be positive");
    if (eps.epsilon() == 0.0) return m;
    const double keep = eps.rho();
    const double add = std::sqrt(eps.epsilon() * entry_variance);
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = keep * m(i, j) + add * rng.complex_normal();
    }
    return out;
}

NoisyDistribution noisy_boson_distribution(const ComplexMatrix& m, NoiseLevel eps, std::size_t mc, SeededRng& rng,
                                           const NoisyBosonOptions& options) {
    if (mc < 100) throw std::invalid_argument("noisy_boson_distribution needs mc >= 100");
    NoisyDistribution result;
    result.reorthonormalized = options.reorthonormalize;
    result.mc_samples = mc;
    const SeededRng base(rng.next_u64());
    if (eps.epsilon() == 0.0) {
        result.distribution = boson_distribution(options.reorthonormalize ? orthonormalize_rows(m) : m);
        result.total_mass = result.distribution.total();
        return result;
    }
    OutcomeDistribution& dist = result.distribution;
    dist.kind = DistributionKind::Boson;
    dist.outcomes = enumerate_multisets(static_cast<int>(m.cols()), static_cast<int>(m.rows()));
    dist.probs.assign(dist.outcomes.size(), 0.0);

    constexpr std::size_t kBlock = 64;
    std::vector<std::vector<double>> block(kBlock);
    for (std::size_t start = 0; start < mc; start += kBlock) {
        const std::size_t count = std::min(kBlock, mc - start);
        parallel_for(count, [&](std::size_t k) {
            SeededRng draw_rng = base.derive("noisy-boson", start + k);
            ComplexMatrix noisy = apply_matrix_noise(m, eps, draw_rng, options.entry_variance);
            if (options.reorthonormalize) noisy = orthonormalize_rows(noisy);
            block[k] = boson_probabilities(noisy, dist.outcomes);
        });
        for (std::size_t k = 0; k < count; ++k) {
            for (std::size_t i = 0; i < dist.probs.size(); ++i) dist.probs[i] += block[k][i];
        }
    }
    const double inv = 1.0 / static_cast<double>(mc);
    for (double& p : dist.probs) p *= inv;
    result.total_mass = dist.total();
    return result;
}

namespace {

void require_same_outcomes(const OutcomeDistribution& d1, const OutcomeDistribution& d2) {
    if (d1.outcomes != d2.outcomes || d1.probs.size() != d2.probs.size()) {
        throw std::invalid_argument("distributions are defined over different outcome lists");
    }
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Sample standard error of the mean; 0 for fewer than two values.
double std_error_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

double distribution_correlation(const OutcomeDistribution& d1, const OutcomeDistribution& d2) {
    require_same_outcomes(d1, d2);
    if (d1.probs.empty()) throw std::invalid_argument("empty distributions");
    const double mu1 = mean_of(d1.probs);
    const double mu2 = mean_of(d2.probs);
    double s11 = 0.0, s22 = 0.0, s12 = 0.0;
    for (std::size_t i = 0; i < d1.probs.size(); ++i) {
        const double a = d1.probs[i] - mu1;
        const double b = d2.probs[i] - mu2;
        s11 += a * a;
        s22 += b * b;
        s12 += a * b;
    }
    if (s11 == 0.0 || s22 == 0.0) throw DegenerateInputError("correlation undefined for a constant probability vector");
    return std::clamp(s12 / std::sqrt(s11 * s22), -1.0, 1.0);
}

double total_variation(const OutcomeDistribution& d1, const OutcomeDistribution& d2) {
    require_same_outcomes(d1, d2);
    double s = 0.0;
    for (std::size_t i = 0; i < d1.probs.size(); ++i) s += std::abs(d1.probs[i] - d2.probs[i]);
    return 0.5 * s;
}

OutcomeDistribution normalized(const OutcomeDistribution& d) {
    const double total = d.total();
    if (!(total > 0.0)) throw DegenerateInputError("distribution has no positive mass");
    OutcomeDistribution out = d;
    for (double& p : out.probs) p /= total;
    return out;
}

double hermite_he(int k, double x) {
    if (k < 0) throw std::invalid_argument("Hermite degree must be non-negative");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = x;
    for (int j = 1; j < k; ++j) {
        const double next = x * cur - j * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

DampingEstimate hermite_damping_check(int k, NoiseLevel eps, std::size_t mc, SeededRng& rng) {
    if (k < 0 || k > 6) throw std::invalid_argument("Hermite damping check supports degrees 0..6");
    if (mc < 2) throw std::invalid_argument("hermite_damping_check needs mc >= 2");
    DampingEstimate out;
    out.degree = k;
    out.epsilon = eps.epsilon();
    out.expected = std::pow(1.0 - eps.epsilon(), 0.5 * k);
    out.mc_samples = mc;
    if (k == 0) {
        out.estimate = 1.0;
        return out;
    }
    const double keep = eps.rho();
    const double add = std::sqrt(eps.epsilon());
    std::vector<double> num(mc), den(mc);
    for (std::size_t i = 0; i < mc; ++i) {
        const double x = rng.normal();
        const double y = keep * x + add * rng.normal();
        const double hx = hermite_he(k, x);
        num[i] = hx * hermite_he(k, y);
        den[i] = hx * hx;
    }
    double sn = 0.0, sd = 0.0;
    for (std::size_t i = 0; i < mc; ++i) {
        sn += num[i];
        sd += den[i];
    }
    const double ratio = sn / sd;
    double ss = 0.0;
    for (std::size_t i = 0; i < mc; ++i) {
        const double r = num[i] - ratio * den[i];
        ss += r * r;
    }
    const double n = static_cast<double>(mc);
    const double mean_den = sd / n;
    out.estimate = ratio;
    out.std_error = std::sqrt(ss / (n - 1.0) / n) / mean_den;
    return out;
}

std::string to_string(InputEnsemble e) { return e == InputEnsemble::Gaussian ? "gaussian" : "haar"; }

std::string to_string(ModeRule r) {
    switch (r) {
        case ModeRule::TwiceN:
            return "2n";
        case ModeRule::QuadraticN:
            return "n2+n";
        case ModeRule::Fixed:
            return "fixed";
    }
    return "unknown";
}

InputEnsemble input_ensemble_from_string(const std::string& name) {
    if (name == "gaussian") return InputEnsemble::Gaussian;
    if (name == "haar") return InputEnsemble::Haar;
    throw std::invalid_argument("unknown input ensemble '" + name + "'");
}

ModeRule mode_rule_from_string(const std::string& name) {
    if (name == "2n") return ModeRule::TwiceN;
    if (name == "n2+n") return ModeRule::QuadraticN;
    if (name == "fixed") return ModeRule::Fixed;
    throw std::invalid_argument("unknown mode rule '" + name + "'");
}

int SweepSpec::modes_for(int n) const {
    switch (mode_rule) {
        case ModeRule::TwiceN:
            return 2 * n;
        case ModeRule::QuadraticN:
            return n * n + n;
        case ModeRule::Fixed:
            return fixed_modes;
    }
    return 0;
}

double SweepSpec::epsilon_for(int n, std::size_t j) const {
    return epsilon_over_n ? epsilon_values.at(j) / n : epsilon_values.at(j);
}

SensitivityCurve sensitivity_sweep(const SweepSpec& spec, SeededRng& rng) {
    if (spec.inputs < 1) throw std::invalid_argument("sweep needs at least one input per cell");
    SensitivityCurve curve;
    curve.n_values = spec.n_values;
    curve.epsilon_values = spec.epsilon_values;
    curve.mc_samples = spec.mc;
    curve.inputs = spec.inputs;
    // Reject invalid or oversized cells before any Monte Carlo work.
    for (int n : spec.n_values) {
        const int m = spec.modes_for(n);
        if (n < 1 || m < n) throw std::invalid_argument("sweep needs 1 <= n <= m");
        for (std::size_t j = 0; j < spec.epsilon_values.size(); ++j) NoiseLevel{spec.epsilon_for(n, j)};
        if (count_multisets(m, n) > kEnumerationCap) {
            throw SizeLimitError("sweep cell n = " + std::to_string(n) + ", m = " + std::to_string(m) +
                                 " exceeds the enumeration cap");
        }
    }
    const SeededRng base(rng.next_u64());

    for (int n : spec.n_values) {
        const int m = spec.modes_for(n);
        std::vector<NoiseLevel> levels;
        for (std::size_t j = 0; j < spec.epsilon_values.size(); ++j) levels.emplace_back(spec.epsilon_for(n, j));

        const std::string tag = "sweep-n" + std::to_string(n);
        // corr[i][j], tv[i][j] for input i and noise level j.
        std::vector<std::vector<double>> corr(spec.inputs), tv(spec.inputs);
        parallel_for(spec.inputs, [&](std::size_t i) {
            SeededRng input_rng = base.derive(tag + "-input", i);
            const ComplexMatrix input = spec.ensemble == InputEnsemble::Gaussian ? gaussian_matrix(n, m, input_rng)
                                                                                 : haar_rows(n, m, input_rng);
            NoisyBosonOptions options;
            options.reorthonormalize = spec.reorthonormalize;
            options.entry_variance = spec.ensemble == InputEnsemble::Gaussian ? 1.0 : 1.0 / m;
            const OutcomeDistribution ideal = boson_distribution(input);
            const OutcomeDistribution ideal_normalized = normalized(ideal);
            for (const NoiseLevel& level : levels) {
                SeededRng noise_rng = base.derive(tag + "-noise", i);
                const NoisyDistribution noisy = noisy_boson_distribution(input, level, spec.mc, noise_rng, options);
                corr[i].push_back(distribution_correlation(ideal, noisy.distribution));
                tv[i].push_back(total_variation(ideal_normalized, normalized(noisy.distribution)));
            }
        });

        for (std::size_t j = 0; j < levels.size(); ++j) {
            std::vector<double> cj(spec.inputs), tj(spec.inputs);
            for (std::size_t i = 0; i < spec.inputs; ++i) {
                cj[i] = corr[i][j];
                tj[i] = tv[i][j];
            }
            SensitivityCell cell;
            cell.n = n;
            cell.m = m;
            cell.epsilon = levels[j].epsilon();
            cell.correlation = mean_of(cj);
            cell.std_error = std_error_of(cj);
            cell.tv = mean_of(tj);
            cell.tv_std_error = std_error_of(tj);
            curve.cells.push_back(cell);
        }
    }
    return curve;
}

std::string sensitivity_to_csv(const SensitivityCurve& curve) {
    std::string out = "n,m,epsilon,correlation,tv,stderr,mc_samples\n";
    for (const auto& c : curve.cells) {
        out += std::to_string(c.n) + ',' + std::to_string(c.m) + ',' + format_double(c.epsilon) + ',' +
               format_double(c.correlation) + ',' + format_double(c.tv) + ',' + format_double(c.std_error) + ',' +
               std::to_string(curve.mc_samples) + '\n';
    }
    return out;
}

}  // namespace noiselab
