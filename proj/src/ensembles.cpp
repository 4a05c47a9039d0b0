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

#include "noiselab/ensembles.hpp"

#include <stdexcept>
#include <string>

#include "noiselab/errors.hpp"

namespace noiselab {

ComplexMatrix gaussian_matrix(int n, int m, SeededRng& rng) {
    if (n < 1 || m < 1) throw std::invalid_argument("gaussian_matrix needs n, m >= 1");
    ComplexMatrix out(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) out(i, j) = rng.complex_normal();
    }
    return out;
}

ComplexMatrix orthonormalize_rows(const ComplexMatrix& m) {
    const Eigen::Index n = m.rows();
    const ComplexMatrix g = m.adjoint();
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), n);
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag == 0.0) throw DegenerateInputError("rows are linearly dependent");
        q.col(k) *= r(k, k) / mag;
    }
    return q.adjoint();
}

ComplexMatrix haar_rows(int n, int m, SeededRng& rng) {
    if (n < 1 || m < 1) throw std::invalid_argument("haar_rows needs n, m >= 1");
    if (n > m) {
        throw std::invalid_argument("haar_rows needs n <= m, got " + std::to_string(n) + " > " + std::to_string(m));
    }
    return orthonormalize_rows(gaussian_matrix(n, m, rng));
}

}  // namespace noiselab
