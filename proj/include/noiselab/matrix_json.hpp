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

#ifndef NOISELAB_MATRIX_JSON_HPP
#define NOISELAB_MATRIX_JSON_HPP

#include <filesystem>

#include <json.hpp>

#include "noiselab/matrix.hpp"

namespace noiselab {

// Wire format shared by every module and the CLI:
//   {"rows": n, "cols": m, "entries": [[re, im], ...]}   (row-major, n*m pairs)

nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Throws std::invalid_argument on a malformed object, a shape mismatch or a
/// non-finite entry.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix load_matrix(const std::filesystem::path& path);

/// Row-major [[re, im], ...] list, as used for gate matrices in circuit files.
nlohmann::json entries_to_json(const ComplexMatrix& m);
ComplexMatrix entries_from_json(const nlohmann::json& entries, Eigen::Index rows, Eigen::Index cols);

}  // namespace noiselab

#endif
