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

#ifndef NOISELAB_RNG_HPP
#define NOISELAB_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace noiselab {

/// SplitMix64 finalizer. Used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x);

/// 64-bit FNV-1a of a tag string.
std::uint64_t hash_tag(std::string_view tag);

/// Seeded random stream.
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Uniform and normal deviates are produced here rather than by
/// <random> distributions, whose algorithms are implementation defined:
///
///   uniform()  = (bits >> 11) * 2^-53                      in [0, 1)
///   normal()   = Box-Muller on two uniforms, one value per call
///   complex_normal() = polar Box-Muller with |z|^2 ~ Exp(1): circularly
///                      symmetric, real and imaginary parts of variance 1/2
///
/// Substreams: derive(tag, index) seeds a new stream with
///   mix64(mix64(seed ^ hash_tag(tag)) + index)
/// so a draw's randomness depends only on (master seed, tag, draw index).
class SeededRng {
   public:
    explicit SeededRng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    double normal();
    std::complex<double> complex_normal();

    /// Uniform integer in [0, bound), bound >= 1. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound);

    SeededRng derive(std::string_view tag, std::uint64_t index) const;

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace noiselab

#endif
