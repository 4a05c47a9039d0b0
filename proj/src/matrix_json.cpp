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

#include "noiselab/matrix_json.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "noiselab/errors.hpp"

namespace noiselab {

nlohmann::json entries_to_json(const ComplexMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
    return entries;
}

ComplexMatrix entries_from_json(const nlohmann::json& entries, Eigen::Index rows, Eigen::Index cols) {
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols) {
        throw std::invalid_argument("expected " + std::to_string(rows * cols) + " [re, im] entries");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index k = 0; k < rows * cols; ++k) {
        const auto& e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw std::invalid_argument("entry " + std::to_string(k) + " is not a [re, im] pair");
        }
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::invalid_argument("entry " + std::to_string(k) + " is not finite");
        }
        m(k / cols, k % cols) = Complex(re, im);
    }
    return m;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries_to_json(m)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
        throw std::invalid_argument("matrix JSON needs rows, cols and entries");
    }
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
        throw std::invalid_argument("matrix rows and cols must be integers");
    }
    const auto rows = j["rows"].get<Eigen::Index>();
    const auto cols = j["cols"].get<Eigen::Index>();
    if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    return entries_from_json(j["entries"], rows, cols);
}

ComplexMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open matrix file " + path.string());
    return matrix_from_json(nlohmann::json::parse(in));
}

}  // namespace noiselab
