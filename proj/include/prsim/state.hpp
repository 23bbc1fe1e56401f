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

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "prsim/pauli.hpp"

namespace prsim {

using Amplitude = std::complex<double>;

/// One term exp(i * angle * pauli) of a rotation circuit.
struct Rotation {
    PauliString pauli;
    double angle = 0;

    bool operator==(const Rotation &) const = default;
};

/// Contiguous array of 2^q amplitudes owned by a single worker.
class AmplitudeBlock {
   public:
    AmplitudeBlock() = default;
    /// Zero-initialized block over `num_qubits` qubits.
    explicit AmplitudeBlock(int num_qubits);
    /// Takes ownership of `amplitudes`; throws unless the size is a power of two.
    explicit AmplitudeBlock(std::vector<Amplitude> amplitudes);

    int num_qubits() const { return q_; }
    std::size_t size() const { return data_.size(); }

    Amplitude &operator[](std::size_t i) { return data_[i]; }
    const Amplitude &operator[](std::size_t i) const { return data_[i]; }

    std::span<Amplitude> amplitudes() { return data_; }
    std::span<const Amplitude> amplitudes() const { return data_; }

    void fill(Amplitude value);

   private:
    int q_ = 0;
    std::vector<Amplitude> data_;
};

namespace detail {

/// Calls fn(i, i ^ flip) once for every unordered pair {i, i ^ flip} of [0, size), lower member
/// first and in ascending order of i. `flip` must be nonzero and below `size`.
template <typename Fn>
void for_each_flip_pair(std::size_t size, std::uint64_t flip, Fn &&fn) {
    std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(flip));
    std::uint64_t stride = top << 1;
    for (std::uint64_t base = 0; base < size; base += stride) {
        for (std::uint64_t i = base; i < base + top; ++i) {
            fn(i, i ^ flip);
        }
    }
}

}  // namespace detail

/// block <- exp(i * angle * P) block, in place. Throws on qubit-count mismatch.
void apply_rotation(AmplitudeBlock &block, const PauliString &pauli, double angle);

/// Applies prod_l exp(i * sign * angle_l * P_l) with the first entry as the leftmost factor,
/// so the last entry acts on the block first.
void apply_rotation_sequence(AmplitudeBlock &block, std::span<const Rotation> sequence, int sign);

/// (a, b) <- (scale * (a + b), scale * (a - b)). The default scale makes this the Hadamard butterfly.
void butterfly(AmplitudeBlock &a, AmplitudeBlock &b, double scale = 0.70710678118654752440);

/// a <- a + b.
void accumulate(AmplitudeBlock &a, const AmplitudeBlock &b);

/// <a|b> = sum conj(a_i) b_i.
Amplitude inner_product(std::span<const Amplitude> a, std::span<const Amplitude> b);
inline Amplitude inner_product(const AmplitudeBlock &a, const AmplitudeBlock &b) {
    return inner_product(a.amplitudes(), b.amplitudes());
}

double norm2(std::span<const Amplitude> a);
inline double norm2(const AmplitudeBlock &a) { return norm2(a.amplitudes()); }

/// Parses the state text format: one `<index> <re> <im>` entry per line, '#' starts a comment,
/// unspecified amplitudes are zero. An index token of exactly `num_qubits` characters drawn from
/// {0,1} is a bitstring with character k giving qubit k (bit k-1); anything else is a decimal
/// index. Repeated indices are rejected.
std::vector<Amplitude> parse_state_text(std::string_view text, int num_qubits);

/// Basis state |index> on `num_qubits` qubits.
std::vector<Amplitude> basis_state(int num_qubits, std::uint64_t index);

}  // namespace prsim
