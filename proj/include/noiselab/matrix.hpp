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

#ifndef NOISELAB_MATRIX_HPP
#define NOISELAB_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace noiselab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Largest size accepted by the permutation-expansion oracles.
inline constexpr int kNaiveLimit = 9;
/// Largest size accepted by per_ryser.
inline constexpr int kRyserLimit = 30;

/// Sub-multiset of the columns of an n x m matrix, stored as repetition
/// counts r_1..r_m. A plain column subset has every count in {0, 1}.
class ColumnMultiset {
   public:
    ColumnMultiset() = default;
    explicit ColumnMultiset(std::vector<int> repetitions);

    /// Builds the multiset from (0-based) column indices, in any order.
    static ColumnMultiset from_columns(std::size_t num_columns, const std::vector<int>& columns);

    const std::vector<int>& repetitions() const { return reps_; }
    std::size_t num_columns() const { return reps_.size(); }
    int total() const;
    bool is_subset() const;

    /// Column indices in non-decreasing order, each repeated r_i times.
    std::vector<int> columns() const;

    /// Product of r_i! over all columns.
    double repetition_factorial() const;

    friend bool operator==(const ColumnMultiset&, const ColumnMultiset&) = default;
    friend auto operator<=>(const ColumnMultiset&, const ColumnMultiset&) = default;

   private:
    std::vector<int> reps_;
};

/// n x n matrix made of column i of m repeated r_i times, columns in
/// non-decreasing index order. Requires sum r_i == m.rows().
ComplexMatrix submatrix(const ComplexMatrix& m, const ColumnMultiset& s);

/// Determinant by the signed permutation expansion. Oracle only (n <= 9).
Complex det_naive(const ComplexMatrix& a);

/// Determinant from a partial-pivoted LU factorization.
Complex det_lu(const ComplexMatrix& a);

/// Permanent by the permutation expansion. Oracle only (n <= 9).
Complex per_naive(const ComplexMatrix& a);

/// Permanent by Ryser's inclusion-exclusion formula, visiting column subsets
/// in Gray-code order so each step adds or removes one column from the row
/// sums. O(2^n n).
///
/// For n > 20 the Gray sequence is cut into 2^(n-20) fixed blocks that may run
/// on different threads; block partial sums are added in block order, so the
/// result is bit-identical for any thread count.
Complex per_ryser(const ComplexMatrix& a);

/// per_ryser of submatrix(m, S) where columns lists S in any order; avoids
/// materializing the submatrix.
Complex per_of_columns(const ComplexMatrix& m, std::span<const int> columns);

/// |a - b| / |b|, or |a - b| when b == 0.
double relative_error(Complex a, Complex b);

}  // namespace noiselab

#endif
