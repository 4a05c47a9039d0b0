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

#ifndef NOISELAB_ERRORS_HPP
#define NOISELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace noiselab {

// Invalid arguments are reported with std::invalid_argument. The types below
// cover the remaining failure classes so callers (mainly the CLI) can map
// them to distinct exit codes.

/// A request exceeds an enumeration, qubit-count or oracle size cap.
class SizeLimitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The input is well formed but the requested quantity is undefined for it
/// (zero variance, marginal probability of 0 or 1, ...).
class DegenerateInputError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A numerical postcondition failed, e.g. a probability below -1e-12.
class NumericalContractError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace noiselab

#endif
