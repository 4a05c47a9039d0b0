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

#include "noiselab/qsim/noisy_cat.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "noiselab/errors.hpp"

namespace noiselab {

double error_correlation(const CorrelatedNoiseSpec& spec) {
    const double r1 = spec.r1();
    const double r2 = spec.r2();
    if (r1 <= 0.0 || r1 >= 1.0 || r2 <= 0.0 || r2 >= 1.0) {
        throw DegenerateInputError("error correlation needs marginal rates strictly between 0 and 1");
    }
    // With probabilities summing to one, p11 - r1 r2 = p11 p00 - p10 p01 and
    // r (1 - r) factors as (p10 + p11)(p00 + p01). These forms make the
    // all-or-none case exactly 1.
    const double a = spec.p11() * spec.p00();
    const double b = spec.p10() * spec.p01();
    double cov = a - b;
    // Covariances within rounding of zero (product specs) are exactly zero.
    if (std::abs(cov) <= 4.0 * DBL_EPSILON * (a + b)) cov = 0.0;
    const double v1 = (spec.p10() + spec.p11()) * (spec.p00() + spec.p01());
    const double v2 = (spec.p01() + spec.p11()) * (spec.p00() + spec.p10());
    return std::clamp(cov / std::sqrt(v1 * v2), -1.0, 1.0);
}

NoisyCatConfig::NoisyCatConfig(Family family, double alpha) : family_(family), alpha_(alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("noisy-cat kernel exponent must lie in (1, 2)");
}

NoisyCatConfig NoisyCatConfig::from_name(const std::string& family, double alpha) {
    if (family == "min-power") return NoisyCatConfig(Family::MinPower, alpha);
    if (family == "geometric-power") return NoisyCatConfig(Family::GeometricPower, alpha);
    throw std::invalid_argument("unknown noisy-cat kernel family '" + family + "'");
}

std::string NoisyCatConfig::name() const { return family_ == Family::MinPower ? "min-power" : "geometric-power"; }

double NoisyCatConfig::kernel(double x, double y) const {
    if (family_ == Family::MinPower) return std::pow(std::min(x, y), alpha_);
    return std::pow(x * y, 0.5 * alpha_);
}

NoisyCatResult noisy_cat_check(double ent, const CorrelatedNoiseSpec& spec, const NoisyCatConfig& cfg) {
    if (!(ent >= 0.0 && ent <= 1.0)) throw std::invalid_argument("entanglement must lie in [0, 1]");
    NoisyCatResult r;
    r.entanglement = ent;
    r.correlation = error_correlation(spec);
    r.kernel = cfg.kernel(spec.r1(), spec.r2());
    r.margin = r.correlation - r.kernel * ent;
    r.pass = r.margin >= 0.0;
    return r;
}

}  // namespace noiselab
