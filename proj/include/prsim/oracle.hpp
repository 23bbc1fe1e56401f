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

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "prsim/hamiltonian.hpp"
#include "prsim/pauli.hpp"
#include "prsim/state.hpp"

/// Dense reference implementations. Everything here is built from Kronecker products of 2x2
/// matrices and standard dense linear algebra, never from the bitmask kernels, so it can serve
/// as ground truth for them. Dimension caps are hard errors.
namespace prsim::oracle {

using DenseOperator = Eigen::MatrixXcd;
using DenseState = Eigen::VectorXcd;

inline constexpr int kMaxPauliQubits = 12;
inline constexpr int kMaxHamiltonianQubits = 10;
inline constexpr int kMaxEffectiveQubits = 8;

DenseState to_dense(std::span<const Amplitude> amplitudes);
std::vector<Amplitude> from_dense(const DenseState &state);

/// Kronecker product with factor 1 on the least significant index bit.
DenseOperator dense_pauli(const PauliString &pauli);

/// cos(phi) I + i sin(phi) P.
DenseOperator dense_rotation(const PauliString &pauli, double angle);

/// Operator acting as `lower` on the low index bits and `upper` on the high ones.
DenseOperator dense_tensor(const DenseOperator &lower, const DenseOperator &upper);

/// Product of the rotations with entry 0 leftmost.
DenseOperator dense_product(std::span<const Rotation> rotations, int num_qubits);

/// Applies the rotations one at a time as dense matrices, last entry first.
std::vector<Amplitude> apply_sequential(std::span<const Amplitude> state, std::span<const Rotation> rotations);

/// Includes the identity offset.
DenseOperator dense_hamiltonian(const Hamiltonian &h);
DenseOperator dense_hamiltonian(const HamiltonianSplit &split);

/// exp(i t H) psi through the eigendecomposition of H.
std::vector<Amplitude> exact_evolution(const Hamiltonian &h, double t, std::span<const Amplitude> state);

struct GroundState {
    double energy = 0;
    std::vector<Amplitude> vector;
    double gap = 0;
    bool degenerate = false;
};

GroundState ground_state(const Hamiltonian &h);
GroundState ground_state(const HamiltonianSplit &split);

struct EffectiveEnergy {
    double energy = 0;
    /// Weight of the reference ground state on the selected eigenspace of the step unitary.
    double overlap = 0;
    bool ambiguous = false;
};

/// Ground energy of the effective Hamiltonian of one deterministic Trotter step (order 1 or 2):
/// the eigenphase of exp(i delta H~) whose eigenspace overlaps most with the ground state of H,
/// divided by delta, plus the offset. Throws if the split has randomized terms.
EffectiveEnergy effective_ground_energy(const HamiltonianSplit &split, double delta, int order);

}  // namespace prsim::oracle
