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
#include <numeric>

#include "gtest/gtest.h"

#include "noiselab/ensembles.hpp"
#include "noiselab/errors.hpp"
#include "noiselab/matrix.hpp"
#include "noiselab/matrix_json.hpp"
#include "noiselab/parallel.hpp"
#include "oracles.hpp"

using namespace noiselab;

namespace {

ColumnMultiset cols(std::size_t m, std::vector<int> one_based) {
    for (int& c : one_based) --c;
    return ColumnMultiset::from_columns(m, one_based);
}

ComplexMatrix scaled_row(ComplexMatrix a, Eigen::Index row, Complex c) {
    a.row(row) *= c;
    return a;
}

}  // namespace

TEST(ColumnMultiset, counts_and_expansion) {
    const auto s = cols(4, {4, 2, 2});
    EXPECT_EQ(s.repetitions(), (std::vector<int>{0, 2, 0, 1}));
    EXPECT_EQ(s.total(), 3);
    EXPECT_FALSE(s.is_subset());
    EXPECT_EQ(s.columns(), (std::vector<int>{1, 1, 3}));
    EXPECT_EQ(s.repetition_factorial(), 2.0);
    EXPECT_THROW(ColumnMultiset({1, -1}), std::invalid_argument);
    EXPECT_THROW(cols(3, {4}), std::invalid_argument);
}

TEST(Submatrix, example_repeated_column) {
    const ComplexMatrix a = submatrix(oracle::example_matrix(), cols(3, {2, 2}));
    const double s3 = 1.0 / std::sqrt(3.0), s2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix expected(2, 2);
    expected << Complex(0, s3), Complex(0, s3), s2, s2;
    EXPECT_LE((a - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Submatrix, all_columns_is_identity_map) {
    SeededRng rng(3);
    const ComplexMatrix m = gaussian_matrix(4, 4, rng);
    EXPECT_EQ(submatrix(m, ColumnMultiset({1, 1, 1, 1})), m);
}

TEST(Submatrix, picks_columns_in_order) {
    SeededRng rng(5);
    const ComplexMatrix m = gaussian_matrix(3, 5, rng);
    const ComplexMatrix a = submatrix(m, cols(5, {4, 1, 4}));
    EXPECT_EQ(a.col(0), m.col(0));
    EXPECT_EQ(a.col(1), m.col(3));
    EXPECT_EQ(a.col(2), m.col(3));
}

TEST(Submatrix, dimension_mismatch) {
    const ComplexMatrix m = oracle::example_matrix();
    EXPECT_THROW(submatrix(m, ColumnMultiset({1, 1})), std::invalid_argument);
    EXPECT_THROW(submatrix(m, ColumnMultiset({1, 1, 1})), std::invalid_argument);
}

TEST(Determinant, identity_and_example) {
    EXPECT_EQ(det_naive(ComplexMatrix::Identity(3, 3)), Complex(1.0));
    EXPECT_LE(std::abs(det_lu(ComplexMatrix::Identity(6, 6)) - 1.0), 1e-15);

    const Complex d = det_naive(submatrix(oracle::example_matrix(), cols(3, {2, 3})));
    EXPECT_NEAR(d.real(), -2.0 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(d.imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::norm(d), 4.0 / 6.0, 1e-15);
}

TEST(Determinant, repeated_column_is_zero) {
    SeededRng rng(8);
    const ComplexMatrix m = gaussian_matrix(4, 4, rng);
    const ComplexMatrix a = submatrix(m, ColumnMultiset({2, 1, 1, 0}));
    EXPECT_LE(std::abs(det_lu(a)), 1e-12);
    EXPECT_LE(std::abs(det_naive(a)), 1e-12);
}

TEST(Determinant, lu_matches_naive) {
    SeededRng rng(11);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix a = gaussian_matrix(n, n, rng);
            EXPECT_LE(relative_error(det_lu(a), det_naive(a)), 1e-10) << "n = " << n;
        }
    }
}

TEST(Determinant, errors) {
    EXPECT_THROW(det_naive(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
    EXPECT_THROW(det_lu(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
    EXPECT_THROW(det_naive(ComplexMatrix::Identity(10, 10)), SizeLimitError);
}

TEST(Permanent, identity_ones_and_example) {
    EXPECT_EQ(per_naive(ComplexMatrix::Identity(3, 3)), Complex(1.0));
    EXPECT_EQ(per_ryser(ComplexMatrix::Identity(4, 4)), Complex(1.0));
    double factorial = 1.0;
    for (int n = 1; n <= 8; ++n) {
        factorial *= n;
        const ComplexMatrix ones = ComplexMatrix::Ones(n, n);
        EXPECT_EQ(per_naive(ones), Complex(factorial));
        EXPECT_NEAR(per_ryser(ones).real(), factorial, 1e-9 * factorial);
    }

    const ComplexMatrix m = oracle::example_matrix();
    const Complex p22 = per_naive(submatrix(m, cols(3, {2, 2})));
    EXPECT_NEAR(p22.real(), 0.0, 1e-15);
    EXPECT_NEAR(p22.imag(), 2.0 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(std::norm(p22) / 2.0, 2.0 / 6.0, 1e-15);
    EXPECT_LE(std::abs(per_ryser(submatrix(m, cols(3, {2, 3})))), 1e-15);
}

TEST(Permanent, ryser_matches_naive_on_random_matrices) {
    SeededRng rng(17);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const ComplexMatrix a = gaussian_matrix(7, 7, rng);
        worst = std::max(worst, relative_error(per_ryser(a), per_naive(a)));
    }
    EXPECT_LE(worst, 1e-9);
}

TEST(Permanent, ryser_matches_naive_all_small_sizes) {
    SeededRng rng(19);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix a = gaussian_matrix(n, n, rng);
            EXPECT_LE(relative_error(per_ryser(a), per_naive(a)), 1e-9) << "n = " << n;
        }
    }
}

TEST(Permanent, multilinear_in_rows) {
    SeededRng rng(23);
    const Complex c(0.3, -1.7);
    for (int n = 2; n <= 6; ++n) {
        const ComplexMatrix a = gaussian_matrix(n, n, rng);
        const ComplexMatrix b = scaled_row(a, n / 2, c);
        EXPECT_LE(relative_error(per_ryser(b), c * per_ryser(a)), 1e-12);
        EXPECT_LE(relative_error(det_lu(b), c * det_lu(a)), 1e-12);
    }
}

TEST(Permanent, invariant_under_column_permutation) {
    SeededRng rng(29);
    const ComplexMatrix a = gaussian_matrix(6, 6, rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
    perm.indices() << 3, 0, 5, 1, 4, 2;
    EXPECT_LE(relative_error(per_ryser(a * perm), per_ryser(a)), 1e-12);
}

TEST(Permanent, block_diagonal_factorizes_in_blocked_path) {
    // n = 21 crosses into the blocked Gray-code sweep.
    SeededRng rng(31);
    const ComplexMatrix a = gaussian_matrix(11, 11, rng);
    const ComplexMatrix b = gaussian_matrix(10, 10, rng);
    ComplexMatrix big = ComplexMatrix::Zero(21, 21);
    big.topLeftCorner(11, 11) = a;
    big.bottomRightCorner(10, 10) = b;
    EXPECT_LE(relative_error(per_ryser(big), per_ryser(a) * per_ryser(b)), 1e-9);
}

TEST(Permanent, blocked_path_independent_of_thread_count) {
    SeededRng rng(37);
    const ComplexMatrix a = gaussian_matrix(21, 21, rng);
    set_worker_threads(1);
    const Complex serial = per_ryser(a);
    set_worker_threads(4);
    const Complex threaded = per_ryser(a);
    set_worker_threads(1);
    EXPECT_EQ(serial, threaded);
}

TEST(Permanent, of_columns_matches_submatrix) {
    SeededRng rng(41);
    const ComplexMatrix m = gaussian_matrix(3, 5, rng);
    const std::vector<int> c = {4, 0, 4};
    EXPECT_LE(relative_error(per_of_columns(m, c),
                             per_ryser(submatrix(m, ColumnMultiset::from_columns(5, c)))),
              1e-14);
    EXPECT_THROW(per_of_columns(m, std::vector<int>{0, 1}), std::invalid_argument);
    EXPECT_THROW(per_of_columns(m, std::vector<int>{0, 1, 5}), std::invalid_argument);
}

TEST(Permanent, errors) {
    EXPECT_THROW(per_ryser(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
    EXPECT_THROW(per_naive(ComplexMatrix::Identity(10, 10)), SizeLimitError);
    EXPECT_THROW(per_ryser(ComplexMatrix::Identity(31, 31)), SizeLimitError);
}

TEST(Ensembles, haar_single_entry_has_unit_modulus) {
    SeededRng rng(43);
    const ComplexMatrix u = haar_rows(1, 1, rng);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(Ensembles, haar_rows_are_orthonormal) {
    SeededRng rng(47);
    for (auto [n, m] : {std::pair{2, 6}, {3, 8}, {4, 9}, {5, 5}}) {
        const ComplexMatrix u = haar_rows(n, m, rng);
        EXPECT_LE((u * u.adjoint() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    }
    EXPECT_THROW(haar_rows(3, 2, rng), std::invalid_argument);
}

TEST(Ensembles, haar_phases_are_uniform) {
    // Phase fixing of the QR factor is what makes the law Haar; without it
    // the first row's first entry would be real and positive.
    SeededRng rng(53);
    double re = 0.0, im = 0.0;
    const int reps = 4000;
    for (int k = 0; k < reps; ++k) {
        const Complex z = haar_rows(2, 3, rng)(0, 0);
        re += z.real();
        im += z.imag();
    }
    EXPECT_LE(std::abs(re / reps), 0.03);
    EXPECT_LE(std::abs(im / reps), 0.03);
}

TEST(Ensembles, gaussian_moments) {
    SeededRng rng(59);
    const ComplexMatrix g = gaussian_matrix(100, 1000, rng);
    const Complex mean = g.mean();
    EXPECT_LE(std::abs(mean), 0.02);
    EXPECT_NEAR(g.cwiseAbs2().mean(), 1.0, 0.02);
    EXPECT_NEAR(g.real().array().square().mean(), 0.5, 0.02);
}

TEST(Ensembles, gaussian_is_deterministic) {
    SeededRng a(61), b(61);
    EXPECT_EQ(gaussian_matrix(5, 7, a), gaussian_matrix(5, 7, b));
}

TEST(Rng, streams_and_substreams) {
    SeededRng a(99), b(99);
    for (int k = 0; k < 100; ++k) ASSERT_EQ(a.next_u64(), b.next_u64());
    // mt19937_64 reference value: the 10000th output for the default seed.
    std::mt19937_64 reference;
    reference.discard(9999);
    EXPECT_EQ(reference(), 9981545732273789042ULL);
    SeededRng base(5);
    EXPECT_NE(base.derive("x", 0).seed(), base.derive("x", 1).seed());
    EXPECT_NE(base.derive("x", 0).seed(), base.derive("y", 0).seed());
    EXPECT_EQ(base.derive("x", 3).seed(), SeededRng(5).derive("x", 3).seed());
    for (int k = 0; k < 1000; ++k) {
        const double u = a.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_LT(a.below(7), 7u);
    }
}

TEST(MatrixJson, round_trip_and_errors) {
    SeededRng rng(67);
    const ComplexMatrix m = gaussian_matrix(2, 3, rng);
    const auto j = matrix_to_json(m);
    EXPECT_EQ(j["rows"], 2);
    EXPECT_EQ(j["cols"], 3);
    EXPECT_EQ(j["entries"].size(), 6u);
    EXPECT_EQ(j["entries"][1][0].get<double>(), m(0, 1).real());
    EXPECT_EQ(matrix_from_json(nlohmann::json::parse(j.dump())), m);

    auto bad = j;
    bad["cols"] = 4;
    EXPECT_THROW(matrix_from_json(bad), std::invalid_argument);
    bad = j;
    bad["entries"][0] = {1.0};
    EXPECT_THROW(matrix_from_json(bad), std::invalid_argument);
    EXPECT_THROW(matrix_from_json(nlohmann::json::object()), std::invalid_argument);
    EXPECT_THROW(load_matrix("/nonexistent/matrix.json"), NotFoundError);
}
