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

#include "noiselab/rng.hpp"

#include <cmath>
#include <numbers>

#include "noiselab/parallel.hpp"

namespace noiselab {

namespace {
std::atomic<unsigned> g_threads{1};
}

unsigned worker_threads() { return g_threads.load(); }
void set_worker_threads(unsigned threads) { g_threads = threads == 0 ? 1 : threads; }

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double SeededRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeededRng::normal() {
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> SeededRng::complex_normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    // Radius for E|z|^2 = 1 directly: |z|^2 ~ Exp(1).
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= limit) return x % bound;
    }
}

SeededRng SeededRng::derive(std::string_view tag, std::uint64_t index) const {
    return SeededRng(mix64(mix64(seed_ ^ hash_tag(tag)) + index));
}

}  // namespace noiselab
