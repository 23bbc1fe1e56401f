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

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace prsim {

inline constexpr int kMaxQubits = 64;

/// A fourth root of unity i^exponent.
struct Phase4 {
    std::uint8_t exponent = 0;

    static constexpr Phase4 one() { return {0}; }
    static constexpr Phase4 i() { return {1}; }
    static constexpr Phase4 minus_one() { return {2}; }
    static constexpr Phase4 minus_i() { return {3}; }

    constexpr Phase4 conj() const { return {static_cast<std::uint8_t>((4 - exponent) & 3)}; }
    constexpr Phase4 operator*(Phase4 other) const {
        return {static_cast<std::uint8_t>((exponent + other.exponent) & 3)};
    }
    constexpr bool operator==(const Phase4 &) const = default;

    std::complex<double> value() const;

    /// Multiplies by a component swap and sign flips only, so the result is exact.
    std::complex<double> apply(std::complex<double> z) const {
        switch (exponent & 3) {
            case 0:
                return z;
            case 1:
                return {-z.imag(), z.real()};
            case 2:
                return {-z.real(), -z.imag()};
            default:
                return {z.imag(), -z.real()};
        }
    }
};

/// Result of a Pauli string acting on a computational basis state: P|i> = phase |index>.
struct BasisImage {
    std::uint64_t index;
    Phase4 phase;
};

/// Pauli string P_1 (x) ... (x) P_n packed into two 64-bit masks.
///
/// Factor k lives at bit k-1. `x_mask` (p1) marks the non-diagonal factors {X, Y};
/// `z_mask` (p2) marks {Y, Z}. Basis index bit k-1 is the state of qubit k.
class PauliString {
   public:
    PauliString() = default;

    /// Identity on `n_qubits` qubits (0 allowed, used for empty suffixes).
    explicit PauliString(int n_qubits);

    /// Throws std::invalid_argument if a mask has bits at or above n_qubits.
    static PauliString from_masks(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

    /// Parses a word over {I, X, Y, Z}; leftmost letter is factor 1.
    static PauliString from_word(std::string_view word);

    std::string word() const;

    int num_qubits() const { return n_; }
    std::uint64_t x_mask() const { return p1_; }
    std::uint64_t z_mask() const { return p2_; }

    /// Letter of factor k (1-based).
    char factor(int k) const;

    bool is_identity() const { return (p1_ | p2_) == 0; }
    bool is_diagonal() const { return p1_ == 0; }
    int weight() const { return std::popcount(p1_ | p2_); }

    /// i^popcount(p1 & p2): the factor contributed by the Y letters.
    Phase4 y_phase() const { return {static_cast<std::uint8_t>(std::popcount(p1_ & p2_) & 3)}; }

    BasisImage apply_to_basis(std::uint64_t basis_index) const {
        std::uint8_t e = y_phase().exponent;
        if (std::popcount(p2_ & basis_index) & 1) {
            e = static_cast<std::uint8_t>((e + 2) & 3);
        }
        return {basis_index ^ p1_, Phase4{e}};
    }

    /// Throws std::invalid_argument on mismatched qubit counts.
    bool commutes_with(const PauliString &other) const;

    /// Splits into (lower n-m factors, upper m factors shifted down to bit 0).
    std::pair<PauliString, PauliString> split_suffix(int m) const;

    /// Inverse of split_suffix: lower (x) upper.
    static PauliString concat(const PauliString &lower, const PauliString &upper);

    /// Lexicographic word order with I < X < Y < Z and factor 1 most significant.
    bool lexicographic_less(const PauliString &other) const;

    bool operator==(const PauliString &) const = default;

   private:
    PauliString(int n, std::uint64_t p1, std::uint64_t p2) : n_(n), p1_(p1), p2_(p2) {}

    int n_ = 0;
    std::uint64_t p1_ = 0;
    std::uint64_t p2_ = 0;
};

struct PauliStringHash {
    std::size_t operator()(const PauliString &p) const noexcept {
        std::uint64_t h = p.x_mask() * 0x9E3779B97F4A7C15ull;
        h ^= p.z_mask() + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(p.num_qubits()));
    }
};

}  // namespace prsim
