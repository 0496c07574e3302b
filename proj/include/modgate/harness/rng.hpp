// Copyright 2026 The modgate Authors
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

#ifndef MODGATE_HARNESS_RNG_HPP
#define MODGATE_HARNESS_RNG_HPP

#include <cstdint>
#include <random>

namespace modgate {

/// SplitMix64 finalizer; used only to derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Portable, reproducible random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard.
/// Distributions are implemented here rather than with <random> distribution
/// objects, whose algorithms vary between standard libraries.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for grid point `index` of a run seeded with `seed`.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(splitmix64(seed) ^ splitmix64(~index)));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

   private:
    std::mt19937_64 engine_;
};

}  // namespace modgate

#endif
