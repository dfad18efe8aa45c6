// Copyright 2026 The vqesim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>

namespace vqesim {

/// Counter-based generator: draw k is a pure function of (seed, k), so
/// results are identical on every platform and independent of draw order.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    /// SplitMix64 finaliser applied to seed + k * golden-ratio increment.
    [[nodiscard]] std::uint64_t bits(std::uint64_t k) const {
        std::uint64_t z = seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    [[nodiscard]] double uniform(std::uint64_t k) const {
        return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t seed_;
};

} // namespace vqesim
