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

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "prsim/circuit.hpp"
#include "prsim/pauli.hpp"

namespace prsim {

struct Term {
    double coefficient = 0;
    PauliString pauli;

    bool operator==(const Term &) const = default;
};

/// Sum of absolute coefficients.
double one_norm(std::span<const Term> terms);

/// H = offset * I + sum_l h_l P_l with distinct, non-identity P_l.
class Hamiltonian {
   public:
    Hamiltonian() = default;

    /// Merges duplicate strings by summing coefficients (first occurrence keeps its position),
    /// moves identity terms into the offset and drops terms whose merged coefficient is zero.
    Hamiltonian(int num_qubits, std::span<const Term> terms, double offset = 0);

    /// Text format: one `<coefficient> <pauli word>` per line, '#' comments. The qubit count is
    /// taken from the first word. Throws std::invalid_argument on malformed or empty input.
    static Hamiltonian parse(std::string_view text);

    int num_qubits() const { return n_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    double offset() const { return offset_; }
    double lambda() const { return one_norm(terms_); }

   private:
    int n_ = 0;
    std::vector<Term> terms_;
    double offset_ = 0;
};

/// Terms in lexicographic word order (I < X < Y < Z, factor 1 most significant).
Hamiltonian sort_for_execution(const Hamiltonian &h);

/// H = H_D + H_R with the L_det largest-|h| terms deterministic.
struct HamiltonianSplit {
    int num_qubits = 0;
    /// Descending |h|, ties broken lexicographically.
    std::vector<Term> deterministic;
    std::vector<Term> randomized;
    double offset = 0;
    double lambda = 0;
    double lambda_r = 0;

    std::size_t l_det() const { return deterministic.size(); }
    std::size_t total_terms() const { return deterministic.size() + randomized.size(); }

    /// Copy with the deterministic part in lexicographic execution order.
    HamiltonianSplit for_execution() const;
};

struct DeterministicCount {
    std::size_t count;
};
struct RandomizedFraction {
    double target;
};

HamiltonianSplit split_deterministic(const Hamiltonian &h, DeterministicCount criterion);
/// Smallest L_det whose randomized weight satisfies lambda_R / lambda <= target.
HamiltonianSplit split_deterministic(const Hamiltonian &h, RandomizedFraction criterion);

/// C_tot = a L_D / (eps delta) + b lambda_R^2 / eps^2.
double cost_model(std::size_t l_d, double lambda_r, double epsilon, double delta, double a, double b);

struct SplitChoice {
    std::size_t l_det = 0;
    double delta = 0;
    double cost = 0;
    double cgs = 0;
};

/// Scans L_det = 0..L. For each candidate, `cgs_proxy` supplies C_gs, the step size is the largest
/// with C_gs delta^2 <= eps, and the candidate with the smallest cost_model value wins.
SplitChoice minimize_cost(const Hamiltonian &h, double epsilon, double a, double b,
                          const std::function<double(const HamiltonianSplit &)> &cgs_proxy);

/// Run-length groups of consecutive rotations sharing the same upper-m suffix. Never reorders.
std::vector<RotationGroup> group_stream(std::span<const Rotation> rotations, int m);

/// 4 sum_a ||H_a|| (sum_{b: [H_a, H_b] != 0} ||H_b||)^2 with ||H_a|| bounded by sum |h| over the
/// set. Two sets are treated as non-commuting when any pair of their strings anticommutes.
double cgs_bound_general(const std::vector<std::vector<Term>> &partition);

/// Bound for the partially randomized split, assuming every deterministic term anticommutes
/// with H_R.
double cgs_bound_partial(const HamiltonianSplit &split);

}  // namespace prsim
