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

#include "noiselab/sampling.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "noiselab/errors.hpp"
#include "noiselab/parallel.hpp"

namespace noiselab {

std::string to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::Boson:
            return "boson";
        case DistributionKind::Fermion:
            return "fermion";
        case DistributionKind::Fourier:
            return "fourier";
    }
    return "unknown";
}

DistributionKind distribution_kind_from_string(const std::string& name) {
    if (name == "boson") return DistributionKind::Boson;
    if (name == "fermion") return DistributionKind::Fermion;
    if (name == "fourier") return DistributionKind::Fourier;
    throw std::invalid_argument("unknown distribution kind '" + name + "'");
}

double OutcomeDistribution::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

std::uint64_t count_subsets(int m, int n) {
    if (n < 0 || m < 0 || n > m) return 0;
    n = std::min(n, m - n);
    // c stays an exact binomial after every step: c * (m - k) / (k + 1).
    unsigned __int128 c = 1;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    for (int k = 0; k < n; ++k) {
        c = c * static_cast<unsigned>(m - k) / static_cast<unsigned>(k + 1);
        if (c > kMax) return kMax;
    }
    return static_cast<std::uint64_t>(c);
}

std::uint64_t count_multisets(int m, int n) {
    if (m < 1 || n < 0) return n == 0 ? 1 : 0;
    return count_subsets(m + n - 1, n);
}

namespace {

void require_sizes(int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("mode and particle counts must be non-negative");
}

void require_enumerable(std::uint64_t count, const char* what) {
    if (count > kEnumerationCap) {
        throw SizeLimitError(std::string(what) + " has " + std::to_string(count) + " outcomes, enumeration cap is " +
                             std::to_string(kEnumerationCap));
    }
}

// Visits non-decreasing (multiset) or increasing (subset) index tuples in
// lexicographic order.
template <typename Fn>
void for_each_tuple(int m, int n, bool allow_repeats, Fn&& fn) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = allow_repeats ? 0 : i;
    if (!allow_repeats && n > m) return;
    for (;;) {
        fn(idx);
        int i = n - 1;
        // Largest value allowed at position i.
        auto top = [&](int pos) { return allow_repeats ? m - 1 : m - n + pos; };
        while (i >= 0 && idx[i] == top(i)) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = allow_repeats ? idx[i] : idx[j - 1] + 1;
    }
}

std::vector<ColumnMultiset> enumerate(int m, int n, bool allow_repeats) {
    std::vector<ColumnMultiset> out;
    for_each_tuple(m, n, allow_repeats, [&](const std::vector<int>& idx) {
        out.push_back(ColumnMultiset::from_columns(static_cast<std::size_t>(m), idx));
    });
    return out;
}

void require_sampling_shape(const ComplexMatrix& m) {
    if (m.rows() < 1 || m.cols() < 1) throw std::invalid_argument("matrix must be at least 1x1");
    if (m.rows() > m.cols()) {
        throw std::invalid_argument("sampling needs n <= m, got " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()));
    }
}

}  // namespace

std::vector<ColumnMultiset> enumerate_subsets(int m, int n) {
    require_sizes(m, n);
    require_enumerable(count_subsets(m, n), "subset enumeration");
    return enumerate(m, n, false);
}

std::vector<ColumnMultiset> enumerate_multisets(int m, int n) {
    require_sizes(m, n);
    require_enumerable(count_multisets(m, n), "multiset enumeration");
    return enumerate(m, n, true);
}

double clamp_probability(double p) {
    if (!(p >= -kNegativeProbTolerance)) {
        throw NumericalContractError("probability " + format_double(p) + " is below the -1e-12 tolerance");
    }
    return p < 0.0 ? 0.0 : p;
}

OutcomeDistribution fermion_distribution(const ComplexMatrix& m) {
    require_sampling_shape(m);
    OutcomeDistribution d;
    d.kind = DistributionKind::Fermion;
    d.outcomes = enumerate_subsets(static_cast<int>(m.cols()), static_cast<int>(m.rows()));
    d.probs.resize(d.outcomes.size());
    parallel_for(d.outcomes.size(),
                 [&](std::size_t k) { d.probs[k] = clamp_probability(std::norm(det_lu(submatrix(m, d.outcomes[k])))); });
    return d;
}

OutcomeDistribution boson_distribution(const ComplexMatrix& m) {
    require_sampling_shape(m);
    OutcomeDistribution d;
    d.kind = DistributionKind::Boson;
    d.outcomes = enumerate_multisets(static_cast<int>(m.cols()), static_cast<int>(m.rows()));
    d.probs = boson_probabilities(m, d.outcomes);
    return d;
}

std::vector<double> boson_probabilities(const ComplexMatrix& m, const std::vector<ColumnMultiset>& outcomes) {
    std::vector<double> probs(outcomes.size());
    for (const auto& s : outcomes) {
        if (s.num_columns() != static_cast<std::size_t>(m.cols()) || s.total() != m.rows()) {
            throw std::invalid_argument("outcome does not match the matrix shape");
        }
    }
    parallel_for(outcomes.size(), [&](std::size_t k) {
        const ColumnMultiset& s = outcomes[k];
        probs[k] = clamp_probability(std::norm(per_of_columns(m, s.columns())) / s.repetition_factorial());
    });
    return probs;
}

std::vector<std::size_t> sample(const OutcomeDistribution& d, SeededRng& rng, std::size_t k) {
    if (d.probs.empty()) throw std::invalid_argument("cannot sample from an empty distribution");
    std::vector<double> cdf(d.probs.size());
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < d.probs.size(); ++i) {
        if (d.probs[i] < 0.0) throw std::invalid_argument("distribution has negative weights");
        acc += d.probs[i];
        cdf[i] = acc;
        if (d.probs[i] > 0.0) last_positive = i;
    }
    if (!(acc > 0.0)) throw std::invalid_argument("distribution has no positive mass");
    std::vector<std::size_t> draws(k);
    for (auto& out : draws) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out = std::min(static_cast<std::size_t>(it - cdf.begin()), last_positive);
    }
    return draws;
}

BooleanFunction::BooleanFunction(int n, std::vector<int> values) : n_(n), values_(std::move(values)) {
    if (n < 0 || n > kFourierMaxBits) {
        throw SizeLimitError("Boolean functions are limited to " + std::to_string(kFourierMaxBits) + " bits");
    }
    if (values_.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("Boolean function on " + std::to_string(n) + " bits needs " +
                                    std::to_string(std::size_t{1} << n) + " values");
    }
    for (int v : values_) {
        if (v != 1 && v != -1) throw std::invalid_argument("Boolean function values must be +1 or -1");
    }
}

BooleanFunction BooleanFunction::dictator(int n, int variable) {
    if (variable < 1 || variable > n) throw std::invalid_argument("dictator variable out of range");
    std::vector<int> v(std::size_t{1} << n);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = (x >> (variable - 1) & 1) ? -1 : 1;
    return BooleanFunction(n, std::move(v));
}

BooleanFunction BooleanFunction::parity(int n) {
    std::vector<int> v(std::size_t{1} << n);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = (std::popcount(x) & 1) ? -1 : 1;
    return BooleanFunction(n, std::move(v));
}

BooleanFunction BooleanFunction::majority(int n) {
    if (n % 2 == 0) throw std::invalid_argument("majority needs an odd number of bits");
    std::vector<int> v(std::size_t{1} << n);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = 2 * std::popcount(x) > n ? -1 : 1;
    return BooleanFunction(n, std::move(v));
}

BooleanFunction BooleanFunction::random(int n, SeededRng& rng) {
    std::vector<int> v(std::size_t{1} << n);
    for (auto& x : v) x = (rng.next_u64() >> 63) ? -1 : 1;
    return BooleanFunction(n, std::move(v));
}

OutcomeDistribution fourier_distribution(const BooleanFunction& f) {
    const int n = f.num_bits();
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> coeff(f.values().begin(), f.values().end());
    // In-place fast Walsh-Hadamard transform. Partial sums are integers, so
    // the transform is exact; the final scaling by 2^-n is exact too.
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t i = 0; i < size; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = coeff[j];
                const double b = coeff[j + h];
                coeff[j] = a + b;
                coeff[j + h] = a - b;
            }
        }
    }
    const double scale = std::ldexp(1.0, -n);
    OutcomeDistribution d;
    d.kind = DistributionKind::Fourier;
    d.outcomes.reserve(size);
    d.probs.reserve(size);
    for (std::size_t s = 0; s < size; ++s) {
        std::vector<int> bits(n);
        for (int i = 0; i < n; ++i) bits[i] = static_cast<int>(s >> i & 1);
        d.outcomes.emplace_back(std::move(bits));
        const double c = coeff[s] * scale;
        d.probs.push_back(c * c);
    }
    return d;
}

OutcomeDistribution reindex(const OutcomeDistribution& d, const std::vector<ColumnMultiset>& outcomes) {
    std::map<ColumnMultiset, double> lookup;
    for (std::size_t i = 0; i < d.size(); ++i) lookup[d.outcomes[i]] += d.probs[i];
    OutcomeDistribution out;
    out.kind = d.kind;
    out.outcomes = outcomes;
    out.probs.reserve(outcomes.size());
    for (const auto& s : outcomes) {
        const auto it = lookup.find(s);
        out.probs.push_back(it == lookup.end() ? 0.0 : it->second);
    }
    return out;
}

std::string outcome_label(const ColumnMultiset& s) {
    std::string out = "{";
    bool first = true;
    for (int c : s.columns()) {
        if (!first) out += ',';
        out += std::to_string(c + 1);
        first = false;
    }
    return out + "}";
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

nlohmann::json distribution_to_json(const OutcomeDistribution& d) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& s : d.outcomes) outcomes.push_back(s.repetitions());
    return {{"kind", to_string(d.kind)}, {"outcomes", outcomes}, {"probs", d.probs}};
}

OutcomeDistribution distribution_from_json(const nlohmann::json& j) {
    OutcomeDistribution d;
    d.kind = distribution_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& o : j.at("outcomes")) d.outcomes.emplace_back(o.get<std::vector<int>>());
    d.probs = j.at("probs").get<std::vector<double>>();
    if (d.probs.size() != d.outcomes.size()) throw std::invalid_argument("outcomes and probs differ in length");
    return d;
}

std::string distribution_to_csv(const OutcomeDistribution& d) {
    std::string out = "outcome,prob\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += '"' + outcome_label(d.outcomes[i]) + "\"," + format_double(d.probs[i]) + '\n';
    }
    return out;
}

}  // namespace noiselab
