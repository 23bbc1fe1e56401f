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

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "prsim/hamiltonian.hpp"
#include "prsim/pauli.hpp"
#include "prsim/state.hpp"

namespace prsim::testing {

inline std::mt19937_64 &shared_rng() {
    static std::mt19937_64 rng(20260415);
    return rng;
}

inline std::string random_word(int n, std::mt19937_64 &rng = shared_rng()) {
    std::string w;
    for (int k = 0; k < n; ++k) {
        w.push_back("IXYZ"[rng() & 3]);
    }
    return w;
}

inline PauliString random_pauli(int n, std::mt19937_64 &rng = shared_rng()) {
    return n == 0 ? PauliString(0) : PauliString::from_word(random_word(n, rng));
}

/// Uniform angle in [-pi, pi).
inline double random_angle(std::mt19937_64 &rng = shared_rng()) {
    return std::uniform_real_distribution<double>(-M_PI, M_PI)(rng);
}

inline std::vector<Amplitude> random_state(int n, std::mt19937_64 &rng = shared_rng()) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> v(std::size_t{1} << n);
    double total = 0;
    for (Amplitude &a : v) {
        a = {g(rng), g(rng)};
        total += std::norm(a);
    }
    for (Amplitude &a : v) {
        a /= std::sqrt(total);
    }
    return v;
}

inline std::vector<Rotation> random_rotations(int n, std::size_t count, std::mt19937_64 &rng = shared_rng()) {
    std::vector<Rotation> out;
    for (std::size_t l = 0; l < count; ++l) {
        out.push_back({random_pauli(n, rng), random_angle(rng)});
    }
    return out;
}

/// Terms with distinct non-identity words and coefficients in [-1, 1] away from zero.
inline std::vector<Term> random_terms(int n, std::size_t count, std::mt19937_64 &rng = shared_rng()) {
    std::vector<Term> out;
    std::uniform_real_distribution<double> mag(0.05, 1.0);
    while (out.size() < count) {
        PauliString p = random_pauli(n, rng);
        if (p.is_identity() ||
            std::any_of(out.begin(), out.end(), [&](const Term &t) { return t.pauli == p; })) {
            continue;
        }
        out.push_back({(rng() & 1 ? 1 : -1) * mag(rng), p});
    }
    return out;
}

inline double max_abs_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    double worst = a.size() == b.size() ? 0 : INFINITY;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

inline std::vector<Amplitude> to_vector(const AmplitudeBlock &block) {
    return {block.amplitudes().begin(), block.amplitudes().end()};
}

}  // namespace prsim::testing
