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

#include "prsim/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "prsim/formulas.hpp"

namespace prsim::oracle {

namespace {

using C = std::complex<double>;

void require_qubits(int n, int cap, const char *what) {
    if (n < 0 || n > cap) {
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(n) + " qubits exceeds the oracle cap of " +
                                    std::to_string(cap));
    }
}

Eigen::Matrix2cd single_qubit(char letter) {
    Eigen::Matrix2cd m;
    switch (letter) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("single_qubit: bad letter");
    }
    return m;
}

/// Standard Kronecker product: `a` on the high index bits.
DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

DenseState to_dense(std::span<const Amplitude> amplitudes) {
    DenseState v(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = amplitudes[i];
    }
    return v;
}

std::vector<Amplitude> from_dense(const DenseState &state) {
    return std::vector<Amplitude>(state.data(), state.data() + state.size());
}

DenseOperator dense_pauli(const PauliString &pauli) {
    require_qubits(pauli.num_qubits(), kMaxPauliQubits, "dense_pauli");
    DenseOperator out = DenseOperator::Identity(1, 1);
    for (int k = 1; k <= pauli.num_qubits(); ++k) {
        out = kron(single_qubit(pauli.factor(k)), out);
    }
    return out;
}

DenseOperator dense_rotation(const PauliString &pauli, double angle) {
    DenseOperator p = dense_pauli(pauli);
    DenseOperator id = DenseOperator::Identity(p.rows(), p.cols());
    return std::cos(angle) * id + C(0, std::sin(angle)) * p;
}

DenseOperator dense_tensor(const DenseOperator &lower, const DenseOperator &upper) { return kron(upper, lower); }

DenseOperator dense_product(std::span<const Rotation> rotations, int num_qubits) {
    require_qubits(num_qubits, kMaxHamiltonianQubits, "dense_product");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    DenseOperator out = DenseOperator::Identity(dim, dim);
    for (const Rotation &r : rotations) {
        if (r.pauli.num_qubits() != num_qubits) {
            throw std::invalid_argument("dense_product: rotation width mismatch");
        }
        out = out * dense_rotation(r.pauli, r.angle);
    }
    return out;
}

namespace {

/// P v computed factor by factor: the 2x2 matrix of factor k acts on index bit k-1.
DenseState apply_pauli_factors(const PauliString &pauli, const DenseState &v) {
    DenseState out = v;
    for (int k = 1; k <= pauli.num_qubits(); ++k) {
        if (pauli.factor(k) == 'I') {
            continue;
        }
        const Eigen::Matrix2cd m = single_qubit(pauli.factor(k));
        const Eigen::Index bit = Eigen::Index{1} << (k - 1);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            if (i & bit) {
                continue;
            }
            const C lo = out(i);
            const C hi = out(i | bit);
            out(i) = m(0, 0) * lo + m(0, 1) * hi;
            out(i | bit) = m(1, 0) * lo + m(1, 1) * hi;
        }
    }
    return out;
}

}  // namespace

std::vector<Amplitude> apply_sequential(std::span<const Amplitude> state, std::span<const Rotation> rotations) {
    DenseState v = to_dense(state);
    for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
        if ((Eigen::Index{1} << it->pauli.num_qubits()) != v.size()) {
            throw std::invalid_argument("apply_sequential: rotation width mismatch");
        }
        require_qubits(it->pauli.num_qubits(), kMaxHamiltonianQubits, "apply_sequential");
        v = std::cos(it->angle) * v + C(0, std::sin(it->angle)) * apply_pauli_factors(it->pauli, v);
    }
    return from_dense(v);
}

namespace {

DenseOperator assemble(int n, std::span<const Term> terms, std::span<const Term> more, double offset) {
    require_qubits(n, kMaxHamiltonianQubits, "dense_hamiltonian");
    const Eigen::Index dim = Eigen::Index{1} << n;
    DenseOperator h = offset * DenseOperator::Identity(dim, dim);
    for (const Term &t : terms) {
        h += t.coefficient * dense_pauli(t.pauli);
    }
    for (const Term &t : more) {
        h += t.coefficient * dense_pauli(t.pauli);
    }
    return h;
}

GroundState ground_state_of(const DenseOperator &h) {
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::logic_error("ground_state: assembled Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("ground_state: eigensolver failed");
    }
    GroundState out;
    out.energy = solver.eigenvalues()(0);
    out.vector = from_dense(solver.eigenvectors().col(0));
    out.gap = h.rows() > 1 ? solver.eigenvalues()(1) - out.energy : 0;
    out.degenerate = h.rows() > 1 && out.gap < 1e-10;
    return out;
}

}  // namespace

DenseOperator dense_hamiltonian(const Hamiltonian &h) { return assemble(h.num_qubits(), h.terms(), {}, h.offset()); }

DenseOperator dense_hamiltonian(const HamiltonianSplit &split) {
    return assemble(split.num_qubits, split.deterministic, split.randomized, split.offset);
}

std::vector<Amplitude> exact_evolution(const Hamiltonian &h, double t, std::span<const Amplitude> state) {
    DenseOperator dense = dense_hamiltonian(h);
    if (static_cast<Eigen::Index>(state.size()) != dense.rows()) {
        throw std::invalid_argument("exact_evolution: state dimension mismatch");
    }
    if ((dense - dense.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::logic_error("exact_evolution: assembled Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(dense);
    const DenseOperator &v = solver.eigenvectors();
    DenseState coeffs = v.adjoint() * to_dense(state);
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, t * solver.eigenvalues()(k));
    }
    return from_dense(v * coeffs);
}

GroundState ground_state(const Hamiltonian &h) { return ground_state_of(dense_hamiltonian(h)); }

GroundState ground_state(const HamiltonianSplit &split) { return ground_state_of(dense_hamiltonian(split)); }

EffectiveEnergy effective_ground_energy(const HamiltonianSplit &split, double delta, int order) {
    if (!split.randomized.empty()) {
        throw std::invalid_argument("effective_ground_energy: randomized terms have no fixed step unitary");
    }
    if (order != 1 && order != 2) {
        throw std::invalid_argument("effective_ground_energy: order must be 1 or 2");
    }
    if (!(delta > 0)) {
        throw std::invalid_argument("effective_ground_energy: delta must be positive");
    }
    require_qubits(split.num_qubits, kMaxEffectiveQubits, "effective_ground_energy");

    const GroundState reference = ground_state(split);
    const DenseState psi = to_dense(reference.vector);
    const RotationStream step =
        order == 1 ? trotter1_step(split.deterministic, delta) : trotter2_step(split.deterministic, delta);
    const DenseOperator u = dense_product(step.rotations, split.num_qubits);

    // U is normal, so its Schur form is diagonal and the Schur vectors are orthonormal eigenvectors.
    Eigen::ComplexSchur<DenseOperator> schur(u);
    const DenseOperator &q = schur.matrixU();
    const Eigen::VectorXcd eig = schur.matrixT().diagonal();
    const DenseState proj = q.adjoint() * psi;

    // Pool degenerate eigenvalues so that a split eigenspace is not undercounted.
    const Eigen::Index dim = eig.size();
    std::vector<bool> used(dim, false);
    double best_weight = -1;
    C best_value{1, 0};
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (used[i]) {
            continue;
        }
        double weight = 0;
        for (Eigen::Index j = i; j < dim; ++j) {
            if (!used[j] && std::abs(eig(j) - eig(i)) < 1e-8) {
                used[j] = true;
                weight += std::norm(proj(j));
            }
        }
        if (weight > best_weight) {
            best_weight = weight;
            best_value = eig(i);
        }
    }
    EffectiveEnergy out;
    out.overlap = best_weight;
    out.ambiguous = best_weight < 0.5;
    out.energy = std::arg(best_value) / delta + split.offset;
    return out;
}

}  // namespace prsim::oracle
