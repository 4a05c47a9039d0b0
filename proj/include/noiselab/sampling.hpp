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

#ifndef NOISELAB_SAMPLING_HPP
#define NOISELAB_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "noiselab/matrix.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

/// Largest number of outcomes the exact boson/fermion enumerations will build.
inline constexpr std::uint64_t kEnumerationCap = 1'000'000;
/// Largest Boolean function arity for FourierSampling.
inline constexpr int kFourierMaxBits = 20;
/// Probabilities in [-kNegativeProbTolerance, 0) are clamped to 0; anything
/// lower raises NumericalContractError.
inline constexpr double kNegativeProbTolerance = 1e-12;

enum class DistributionKind { Boson, Fermion, Fourier };

std::string to_string(DistributionKind kind);
DistributionKind distribution_kind_from_string(const std::string& name);

/// Finite distribution over column multisets (boson), column subsets
/// (fermion) or index sets of Boolean variables (Fourier, stored as 0/1
/// indicator vectors). outcomes and probs are parallel arrays.
struct OutcomeDistribution {
    DistributionKind kind = DistributionKind::Boson;
    std::vector<ColumnMultiset> outcomes;
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    double total() const;

    friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

/// C(m, n) and C(m + n - 1, n), saturating at UINT64_MAX.
std::uint64_t count_subsets(int m, int n);
std::uint64_t count_multisets(int m, int n);

/// All n-subsets / n-multisets of m columns in lexicographic order of their
/// sorted column-index tuples.
std::vector<ColumnMultiset> enumerate_subsets(int m, int n);
std::vector<ColumnMultiset> enumerate_multisets(int m, int n);

/// |det|^2 of every n x n column-subset submatrix.
OutcomeDistribution fermion_distribution(const ComplexMatrix& m);

/// |per|^2 / prod r_i! of every n x n column-multiset submatrix.
OutcomeDistribution boson_distribution(const ComplexMatrix& m);

/// Boson probabilities of m over a precomputed outcome list.
std::vector<double> boson_probabilities(const ComplexMatrix& m, const std::vector<ColumnMultiset>& outcomes);

/// k independent outcome indices by inverse-CDF lookup. Unnormalized
/// distributions are sampled proportionally to their weights.
std::vector<std::size_t> sample(const OutcomeDistribution& d, SeededRng& rng, std::size_t k);

/// Boolean function on n bits with values in {-1, +1}; values[x] is f at the
/// bit pattern x (bit i is variable i + 1).
class BooleanFunction {
   public:
    BooleanFunction(int n, std::vector<int> values);

    static BooleanFunction dictator(int n, int variable);
    static BooleanFunction parity(int n);
    /// Odd n only.
    static BooleanFunction majority(int n);
    static BooleanFunction random(int n, SeededRng& rng);

    int num_bits() const { return n_; }
    const std::vector<int>& values() const { return values_; }

   private:
    int n_;
    std::vector<int> values_;
};

/// Squared Walsh-Hadamard coefficients fhat(S)^2, outcomes ordered by the
/// integer bit mask of S.
OutcomeDistribution fourier_distribution(const BooleanFunction& f);

/// Re-expresses d over the given outcome list; outcomes missing from d get 0.
OutcomeDistribution reindex(const OutcomeDistribution& d, const std::vector<ColumnMultiset>& outcomes);

/// Checks the -1e-12 tolerance and clamps small negatives to 0.
double clamp_probability(double p);

/// "{1,2}" style label with 1-based column indices, repeated per multiplicity.
std::string outcome_label(const ColumnMultiset& s);

nlohmann::json distribution_to_json(const OutcomeDistribution& d);
OutcomeDistribution distribution_from_json(const nlohmann::json& j);
/// Two-column CSV "outcome,prob" with a header row.
std::string distribution_to_csv(const OutcomeDistribution& d);

/// Shortest round-trip decimal form of a double, used by every CSV/JSON writer.
std::string format_double(double x);

}  // namespace noiselab

#endif
