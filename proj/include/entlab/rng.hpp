// Copyright 2026 The entlab developers
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

#ifndef ENTLAB_RNG_HPP
#define ENTLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace entlab {

/// Finalizer step of splitmix64; bijective on 64-bit values.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Every random stream in the artifact is seeded as
/// mix64(mix64(master ^ fnv1a64(stream)) + counter), so one master seed
/// reproduces all module streams and parallel workers never share a stream.
constexpr uint64_t derive_seed(uint64_t master, std::string_view stream, uint64_t counter = 0) {
    return mix64(mix64(master ^ fnv1a64(stream)) + counter);
}

inline std::mt19937_64 make_rng(uint64_t master, std::string_view stream, uint64_t counter = 0) {
    return std::mt19937_64(derive_seed(master, stream, counter));
}

}  // namespace entlab

#endif
