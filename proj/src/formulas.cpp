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

#include "prsim/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace prsim {

RotationStream trotter1_step(std::span<const Term> terms, double delta) {
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("trotter1_step: non-finite step size");
    }
    RotationStream out;
    out.step_size = delta;
    out.order = 1;
    out.rotations.reserve(terms.size());
    for (const Term &t : terms) {
        out.rotations.push_back({t.pauli, delta * t.coefficient});
    }
    return out;
}

RotationStream trotter2_step(std::span<const Term> terms, double delta) {
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("trotter2_step: non-finite step size");
    }
    RotationStream out;
    out.step_size = delta;
    out.order = 2;
    out.rotations.reserve(2 * terms.size());
    const double half = delta / 2;
    for (const Term &t : terms) {
        out.rotations.push_back({t.pauli, half * t.coefficient});
    }
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        out.rotations.push_back({it->pauli, half * it->coefficient});
    }
    return out;
}

TermSampler::TermSampler(std::span<const Term> terms) : terms_(terms.begin(), terms.end()) {
    cumulative_.reserve(terms_.size());
    for (const Term &t : terms_) {
        lambda_ += std::abs(t.coefficient);
        cumulative_.push_back(lambda_);
    }
}

std::size_t TermSampler::draw(std::mt19937_64 &engine) const {
    const double u = StreamRng::uniform(engine) * lambda_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        --it;
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::vector<Rotation> qdrift_stage(const TermSampler &sampler, double t_stage, std::size_t r,
                                   std::mt19937_64 &engine) {
    std::vector<Rotation> out;
    if (r == 0) {
        return out;
    }
    if (sampler.empty()) {
        throw std::invalid_argument("qdrift_stage: " + std::to_string(r) + " samples requested from an empty H_R");
    }
    const double tau = sampler.lambda() * t_stage / static_cast<double>(r);
    out.reserve(r);
    for (std::size_t s = 0; s < r; ++s) {
        const Term &t = sampler.term(sampler.draw(engine));
        out.push_back({t.pauli, t.coefficient > 0 ? tau : -tau});
    }
    return out;
}

std::vector<Rotation> qdrift_stage(std::span<const Term> randomized, double t_stage, std::size_t r,
                                   std::mt19937_64 &engine) {
    return qdrift_stage(TermSampler(randomized), t_stage, r, engine);
}

namespace {

void check_split_samples(const HamiltonianSplit &split, std::size_t r) {
    if (r == 0 && !split.randomized.empty()) {
        throw std::invalid_argument("partially randomized step: r = 0 leaves a non-empty H_R unrepresented");
    }
}

void append_step(RotationStream &out, const HamiltonianSplit &split, const TermSampler &sampler, double delta,
                 std::size_t r, const StreamRng &rng, std::uint64_t step) {
    const double half = delta / 2;
    for (const Term &t : split.deterministic) {
        out.rotations.push_back({t.pauli, half * t.coefficient});
    }
    for (std::uint64_t stage = 0; stage < 2; ++stage) {
        std::mt19937_64 engine = rng.engine(step, stage);
        std::vector<Rotation> samples = qdrift_stage(sampler, half, r, engine);
        out.rotations.insert(out.rotations.end(), samples.begin(), samples.end());
    }
    for (auto it = split.deterministic.rbegin(); it != split.deterministic.rend(); ++it) {
        out.rotations.push_back({it->pauli, half * it->coefficient});
    }
}

}  // namespace

RotationStream partially_randomized_step(const HamiltonianSplit &split, double delta, std::size_t r,
                                         const StreamRng &rng, std::uint64_t step) {
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("partially_randomized_step: non-finite step size");
    }
    check_split_samples(split, r);
    TermSampler sampler(split.randomized);
    RotationStream out;
    out.step_size = delta;
    out.order = 2;
    out.samples_per_stage = static_cast<int>(r);
    out.seed = rng.seed();
    out.rotations.reserve(2 * split.deterministic.size() + 2 * r);
    append_step(out, split, sampler, delta, r, rng, step);
    return out;
}

RotationStream evolution_stream(const HamiltonianSplit &split, double delta, std::uint64_t steps, std::size_t r,
                                const StreamRng &rng) {
    if (steps < 1) {
        throw std::invalid_argument("evolution_stream: steps must be at least 1");
    }
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("evolution_stream: non-finite step size");
    }
    check_split_samples(split, r);
    TermSampler sampler(split.randomized);
    RotationStream out;
    out.step_size = delta;
    out.steps = static_cast<int>(steps);
    out.order = 2;
    out.samples_per_stage = static_cast<int>(r);
    out.seed = rng.seed();
    out.rotations.reserve(steps * (2 * split.deterministic.size() + 2 * r));
    for (std::uint64_t s = 0; s < steps; ++s) {
        append_step(out, split, sampler, delta, r, rng, s);
    }
    return out;
}

double default_kappa(double delta) { return delta / (0.2 * std::numbers::pi); }

std::size_t sample_count(std::optional<double> kappa, double lambda_r, double delta, int max_round,
                         double reduction) {
    if (!(delta > 0)) {
        throw std::invalid_argument("sample_count: delta must be positive");
    }
    if (max_round < 0 || max_round > 60) {
        throw std::invalid_argument("sample_count: max round out of range");
    }
    if (!(reduction > 0 && reduction <= 1)) {
        throw std::invalid_argument("sample_count: reduction factor must lie in (0, 1]");
    }
    const double k = kappa.value_or(default_kappa(delta));
    const double raw = reduction * k * lambda_r * lambda_r * delta * delta * std::ldexp(1.0, max_round);
    return static_cast<std::size_t>(std::ceil(raw));
}

}  // namespace prsim
