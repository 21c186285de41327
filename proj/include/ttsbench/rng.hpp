// Copyright 2026 The ttsbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

# pragma once

#include <cstdint>

namespace ttsbench {

// SplitMix64 finalizer. Used both to expand a single seed into generator
// state and to derive independent stream seeds from (seed, id) tuples.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t id) {
    return mix64(seed ^ mix64(id));
}

template <class... Ids>
uint64_t derive_seed(uint64_t seed, uint64_t id, uint64_t id2, Ids... rest) {
    return derive_seed(derive_seed(seed, id), id2, rest...);
}

// xoshiro256++ (Blackman & Vigna). Seeded via SplitMix64 so that any 64-bit
// seed, including 0, yields a valid nonzero state.
class Xoshiro256 {
  public:
    explicit Xoshiro256(uint64_t seed = 0) {
        uint64_t sm = seed;
        for (auto& w : s_) {
            sm += 0x9e3779b97f4a7c15ULL;
            w = mix64(sm);
        }
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in {0, ..., n-1}; modulo bias is negligible for the n used here
    uint64_t below(uint64_t n) { return next() % n; }

    bool bit() { return (next() >> 63) != 0; }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace ttsbench
