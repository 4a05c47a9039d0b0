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

#ifndef NOISELAB_ENSEMBLES_HPP
#define NOISELAB_ENSEMBLES_HPP

#include "noiselab/matrix.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

/// n x m matrix with i.i.d. circularly-symmetric complex Gaussian entries,
/// E|a_ij|^2 = 1. Entries are drawn in row-major order.
ComplexMatrix gaussian_matrix(int n, int m, SeededRng& rng);

/// First n rows of a Haar-random m x m unitary (n <= m).
///
/// Draws an m x n Gaussian matrix G, takes the thin QR factor Q of G with the
/// phases of diag(R) moved into Q (so the map G -> Q is unique), and returns
/// Q^dagger. The adjoint of a Haar unitary is Haar, so the rows have the
/// required law.
ComplexMatrix haar_rows(int n, int m, SeededRng& rng);

/// Rows replaced by an orthonormal basis of their span, using the same
/// phase-fixed QR as haar_rows. Requires full row rank.
ComplexMatrix orthonormalize_rows(const ComplexMatrix& m);

}  // namespace noiselab

#endif
