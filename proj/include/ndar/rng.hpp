// Copyright 2026 The NDAR Authors
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

/**
 * @file
 * Seed derivation and the few sampling primitives the library needs.
 *
 * All randomness flows through std::mt19937_64. The standard distributions
 * are implementation-defined, so uniform doubles and bounded integers are
 * derived from raw engine output here to keep streams identical across
 * standard libraries.
 */

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

namespace ndar {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Order-sensitive hash of a seed path, e.g. (master, run, iteration, stream).
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (auto v : path) {
        h = mix64(h ^ mix64(v));
    }
    return h;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by rejection; bound must be nonzero.
inline std::uint64_t uniform_below(Engine &rng, std::uint64_t bound) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename RandomIt> void shuffle(RandomIt first, RandomIt last, Engine &rng) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
        const auto j = uniform_below(rng, i);
        std::swap(first[i - 1], first[j]);
    }
}

} // namespace ndar
