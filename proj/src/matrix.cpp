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

#include "noiselab/matrix.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "noiselab/errors.hpp"
#include "noiselab/parallel.hpp"

namespace noiselab {

ColumnMultiset::ColumnMultiset(std::vector<int> repetitions) : reps_(std::move(repetitions)) {
    for (int r : reps_) {
        if (r < 0) throw std::invalid_argument("column repetition counts must be non-negative");
    }
}

ColumnMultiset ColumnMultiset::from_columns(std::size_t num_columns, const std::vector<int>& columns) {
    std::vector<int> reps(num_columns, 0);
    for (int c : columns) {
        if (c < 0 || static_cast<std::size_t>(c) >= num_columns) {
            throw std::invalid_argument("column index " + std::to_string(c) + " out of range");
        }
        ++reps[c];
    }
    return ColumnMultiset(std::move(reps));
}

int ColumnMultiset::total() const { return std::accumulate(reps_.begin(), reps_.end(), 0); }

bool ColumnMultiset::is_subset() const {
    for (int r : reps_) {
        if (r > 1) return false;
    }
    return true;
}

std::vector<int> ColumnMultiset::columns() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < reps_.size(); ++i) out.insert(out.end(), reps_[i], static_cast<int>(i));
    return out;
}

double ColumnMultiset::repetition_factorial() const {
    double f = 1.0;
    for (int r : reps_) {
        for (int k = 2; k <= r; ++k) f *= k;
    }
    return f;
}

ComplexMatrix submatrix(const ComplexMatrix& m, const ColumnMultiset& s) {
    if (s.num_columns() != static_cast<std::size_t>(m.cols())) {
        throw std::invalid_argument("multiset has " + std::to_string(s.num_columns()) + " columns, matrix has " +
                                    std::to_string(m.cols()));
    }
    if (s.total() != m.rows()) {
        throw std::invalid_argument("multiset size " + std::to_string(s.total()) + " differs from row count " +
                                    std::to_string(m.rows()));
    }
    const std::vector<int> cols = s.columns();
    ComplexMatrix out(m.rows(), m.rows());
    for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) = m.col(cols[j]);
    return out;
}

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument(std::string(what) + " needs a square matrix, got " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()));
    }
}

void require_at_most(const ComplexMatrix& a, int limit, const char* what) {
    if (a.rows() > limit) {
        throw SizeLimitError(std::string(what) + " is limited to n <= " + std::to_string(limit) + ", got n = " +
                             std::to_string(a.rows()));
    }
}

// Heap's algorithm; every step is a single transposition, so the sign flips
// on each step.
template <bool Signed>
Complex permutation_expansion(const ComplexMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> c(n, 0);
    auto term = [&] {
        Complex p = 1.0;
        for (int i = 0; i < n; ++i) p *= a(i, perm[i]);
        return p;
    };
    Complex sum = term();
    double sign = 1.0;
    int i = 1;
    while (i < n) {
        if (c[i] < i) {
            std::swap(perm[i % 2 == 0 ? 0 : c[i]], perm[i]);
            sign = -sign;
            if constexpr (Signed) {
                sum += sign * term();
            } else {
                sum += term();
            }
            ++c[i];
            i = 1;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    return sum;
}

// Sum over Gray-code steps [begin, end) of (-1)^|S| prod_i rowsum_i(S), where
// cols[j] points at the n contiguous entries of column j.
Complex ryser_block(const Complex* const* cols, int n, std::uint64_t begin, std::uint64_t end) {
    std::array<Complex, kRyserLimit> rowsum{};
    std::uint64_t gray = begin ^ (begin >> 1);
    for (int j = 0; j < n; ++j) {
        if (gray >> j & 1) {
            for (int i = 0; i < n; ++i) rowsum[i] += cols[j][i];
        }
    }
    Complex sum = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
        if (k != begin) {
            const int j = std::countr_zero(k);
            gray ^= std::uint64_t{1} << j;
            const Complex* c = cols[j];
            if (gray >> j & 1) {
                for (int i = 0; i < n; ++i) rowsum[i] += c[i];
            } else {
                for (int i = 0; i < n; ++i) rowsum[i] -= c[i];
            }
        }
        if (gray == 0) continue;
        Complex prod = rowsum[0];
        for (int i = 1; i < n; ++i) prod *= rowsum[i];
        if (std::popcount(gray) & 1) {
            sum -= prod;
        } else {
            sum += prod;
        }
    }
    return sum;
}

constexpr int kRyserBlockBits = 20;

}  // namespace

Complex det_naive(const ComplexMatrix& a) {
    require_square(a, "det_naive");
    require_at_most(a, kNaiveLimit, "det_naive");
    if (a.rows() == 0) return 1.0;
    return permutation_expansion<true>(a);
}

Complex det_lu(const ComplexMatrix& a) {
    require_square(a, "det_lu");
    if (a.rows() == 0) return 1.0;
    return a.partialPivLu().determinant();
}

Complex per_naive(const ComplexMatrix& a) {
    require_square(a, "per_naive");
    require_at_most(a, kNaiveLimit, "per_naive");
    if (a.rows() == 0) return 1.0;
    return permutation_expansion<false>(a);
}

namespace {

Complex ryser(const Complex* const* cols, int n) {
    if (n == 0) return 1.0;
    const std::uint64_t steps = std::uint64_t{1} << n;
    Complex sum;
    if (n <= kRyserBlockBits) {
        sum = ryser_block(cols, n, 0, steps);
    } else {
        const std::uint64_t block = std::uint64_t{1} << kRyserBlockBits;
        std::vector<Complex> partial(steps / block);
        parallel_for(partial.size(),
                     [&](std::size_t b) { partial[b] = ryser_block(cols, n, b * block, (b + 1) * block); });
        sum = 0.0;
        for (const Complex& p : partial) sum += p;
    }
    return n % 2 == 0 ? sum : -sum;
}

}  // namespace

Complex per_ryser(const ComplexMatrix& a) {
    require_square(a, "per_ryser");
    require_at_most(a, kRyserLimit, "per_ryser");
    const int n = static_cast<int>(a.rows());
    std::array<const Complex*, kRyserLimit> cols{};
    for (int j = 0; j < n; ++j) cols[j] = a.data() + static_cast<std::ptrdiff_t>(j) * n;
    return ryser(cols.data(), n);
}

Complex per_of_columns(const ComplexMatrix& m, std::span<const int> columns) {
    const int n = static_cast<int>(m.rows());
    if (static_cast<Eigen::Index>(columns.size()) != m.rows()) {
        throw std::invalid_argument("per_of_columns needs exactly one column index per row");
    }
    if (n > kRyserLimit) throw SizeLimitError("per_of_columns is limited to n <= " + std::to_string(kRyserLimit));
    std::array<const Complex*, kRyserLimit> cols{};
    for (int j = 0; j < n; ++j) {
        if (columns[j] < 0 || columns[j] >= m.cols()) throw std::invalid_argument("column index out of range");
        cols[j] = m.data() + static_cast<std::ptrdiff_t>(columns[j]) * n;
    }
    return ryser(cols.data(), n);
}

double relative_error(Complex a, Complex b) {
    const double diff = std::abs(a - b);
    const double scale = std::abs(b);
    return scale == 0.0 ? diff : diff / scale;
}

}  // namespace noiselab
