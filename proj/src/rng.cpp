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

#include "prsim/rng.hpp"

namespace prsim {

StreamRng StreamRng::derive(std::uint64_t key) const {
    StreamRng child = *this;
    child.path_.push_back(key);
    return child;
}

std::mt19937_64 StreamRng::engine(std::uint64_t step, std::uint64_t stage) const {
    std::vector<std::uint32_t> words;
    words.reserve(2 * (path_.size() + 3) + 1);
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed_);
    // Path length separates e.g. derive(a).engine(...) from a longer path with the same prefix.
    words.push_back(static_cast<std::uint32_t>(path_.size()));
    for (std::uint64_t key : path_) {
        push(key);
    }
    push(step);
    push(stage);
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace prsim
