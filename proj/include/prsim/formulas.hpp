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
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "prsim/circuit.hpp"
#include "prsim/hamiltonian.hpp"
#include "prsim/rng.hpp"

namespace prsim {

// Product-formula builders. Streams follow the operator-product convention of
// apply_rotation_sequence: entry 0 is the leftmost factor.

/// prod_l exp(i delta h_l P_l) over the terms in their given order.
RotationStream trotter1_step(std::span<const Term> terms, double delta);
inline RotationStream trotter1_step(const Hamiltonian &h, double delta) { return trotter1_step(h.terms(), delta); }

/// Forward sweep at delta/2 followed by the reversed sweep at delta/2.
RotationStream trotter2_step(std::span<const Term> terms, double delta);
inline RotationStream trotter2_step(const Hamiltonian &h, double delta) { return trotter2_step(h.terms(), delta); }

/// Draws terms with probability |h_l| / lambda_R.
class TermSampler {
   public:
    explicit TermSampler(std::span<const Term> terms);

    bool empty() const { return terms_.empty(); }
    double lambda() const { return lambda_; }

    /// Index of the drawn term.
    std::size_t draw(std::mt19937_64 &engine) const;
    const Term &term(std::size_t index) const { return terms_[index]; }

   private:
    std::vector<Term> terms_;
    std::vector<double> cumulative_;
    double lambda_ = 0;
};

/// r samples of exp(i sign(h_l) lambda_R t / r P_l), sample 0 leftmost. Throws when r > 0 and
/// the sampler is empty.
std::vector<Rotation> qdrift_stage(const TermSampler &sampler, double t_stage, std::size_t r,
                                   std::mt19937_64 &engine);
std::vector<Rotation> qdrift_stage(std::span<const Term> randomized, double t_stage, std::size_t r,
                                   std::mt19937_64 &engine);

/// One second-order partially randomized step: D forward at delta/2, two fresh qDRIFT stages of
/// time delta/2 each, D reversed at delta/2. The stages of step `step` draw from
/// rng.engine(step, 0) and rng.engine(step, 1). Uses the deterministic terms in the order
/// stored in the split.
RotationStream partially_randomized_step(const HamiltonianSplit &split, double delta, std::size_t r,
                                         const StreamRng &rng, std::uint64_t step = 0);

/// `steps` consecutive partially randomized steps; step s is entry block s of the stream.
RotationStream evolution_stream(const HamiltonianSplit &split, double delta, std::uint64_t steps, std::size_t r,
                                const StreamRng &rng);

/// Default kappa = delta / (0.2 pi).
double default_kappa(double delta);

/// r = ceil(f * kappa * lambda_R^2 * delta^2 * 2^M), with kappa defaulting to default_kappa(delta)
/// and f the sample-reduction factor in (0, 1].
std::size_t sample_count(std::optional<double> kappa, double lambda_r, double delta, int max_round,
                         double reduction = 1.0);

}  // namespace prsim
