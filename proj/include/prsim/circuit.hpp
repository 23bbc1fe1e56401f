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
#include <string>
#include <string_view>
#include <vector>

#include "prsim/pauli.hpp"
#include "prsim/state.hpp"

namespace prsim {

/// Consecutive rotations whose full strings share the upper-qubit suffix.
///
/// Represents prod_l exp(i angle_l members_l (x) suffix), first member leftmost.
struct RotationGroup {
    PauliString suffix;
    std::vector<Rotation> members;
};

/// Ordered rotation list plus the parameters that produced it. Entry 0 is the leftmost
/// factor of the represented operator product.
struct RotationStream {
    std::vector<Rotation> rotations;
    double step_size = 0;
    int steps = 1;
    int order = 0;
    int samples_per_stage = 0;
    std::uint64_t seed = 0;

    std::size_t size() const { return rotations.size(); }
    void append(const RotationStream &other) {
        rotations.insert(rotations.end(), other.rotations.begin(), other.rotations.end());
    }
};

/// One `<phi> <pauli word>` line per rotation, angles printed round-trip exact.
std::string format_rotations(const std::vector<Rotation> &rotations);

/// Inverse of format_rotations; '#' comments and blank lines are skipped.
std::vector<Rotation> parse_rotations(std::string_view text);

}  // namespace prsim
