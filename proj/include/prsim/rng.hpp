// Copyright 2026 The prsim Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace prsim {

/// Keyed random source: every engine is a pure function of (seed, key path, step, stage), so a
/// stream can be rebuilt in any order or on any worker and still draw identical samples.
class StreamRng {
   public:
    explicit StreamRng(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Child source for an independent sub-experiment (repeat index, round, ...).
    StreamRng derive(std::uint64_t key) const;

    /// Engine for the samples of one randomized stage.
    std::mt19937_64 engine(std::uint64_t step, std::uint64_t stage) const;

    /// Uniform double in [0, 1) with 53 random bits; independent of the standard library's
    /// distribution implementations.
    static double uniform(std::mt19937_64 &engine) {
        return static_cast<double>(engine() >> 11) * 0x1.0p-53;
    }

   private:
    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
};

}  // namespace prsim
