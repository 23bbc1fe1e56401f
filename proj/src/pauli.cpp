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

#include "prsim/pauli.hpp"

#include <stdexcept>

namespace prsim {

namespace {

std::uint64_t low_bits(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

int letter_rank(bool x, bool z) {
    // I=0, X=1, Y=2, Z=3.
    if (!x) {
        return z ? 3 : 0;
    }
    return z ? 2 : 1;
}

}  // namespace

std::complex<double> Phase4::value() const {
    switch (exponent & 3) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("Pauli string qubit count out of range: " + std::to_string(n_qubits));
    }
}

PauliString PauliString::from_masks(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask) {
    if (n_qubits < 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("Pauli string qubit count out of range: " + std::to_string(n_qubits));
    }
    if (((x_mask | z_mask) & ~low_bits(n_qubits)) != 0) {
        throw std::invalid_argument("Pauli masks have bits beyond qubit count");
    }
    return {n_qubits, x_mask, z_mask};
}

PauliString PauliString::from_word(std::string_view word) {
    if (word.empty() || word.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw std::invalid_argument("Pauli word length must be in 1..64, got " + std::to_string(word.size()));
    }
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    for (std::size_t k = 0; k < word.size(); ++k) {
        std::uint64_t bit = std::uint64_t{1} << k;
        switch (word[k]) {
            case 'I':
                break;
            case 'X':
                p1 |= bit;
                break;
            case 'Y':
                p1 |= bit;
                p2 |= bit;
                break;
            case 'Z':
                p2 |= bit;
                break;
            default:
                throw std::invalid_argument(std::string("invalid Pauli letter '") + word[k] + "' in \"" +
                                            std::string(word) + "\"");
        }
    }
    return {static_cast<int>(word.size()), p1, p2};
}

char PauliString::factor(int k) const {
    if (k < 1 || k > n_) {
        throw std::out_of_range("Pauli factor index out of range");
    }
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    bool x = (p1_ >> (k - 1)) & 1;
    bool z = (p2_ >> (k - 1)) & 1;
    return kLetters[letter_rank(x, z)];
}

std::string PauliString::word() const {
    std::string out;
    out.reserve(n_);
    for (int k = 1; k <= n_; ++k) {
        out.push_back(factor(k));
    }
    return out;
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("commutes_with: mismatched qubit counts " + std::to_string(n_) + " vs " +
                                    std::to_string(other.n_));
    }
    int a = std::popcount(p1_ & other.p2_) & 1;
    int b = std::popcount(p2_ & other.p1_) & 1;
    return a == b;
}

std::pair<PauliString, PauliString> PauliString::split_suffix(int m) const {
    if (m < 0 || m >= n_) {
        throw std::invalid_argument("split_suffix: m=" + std::to_string(m) + " outside [0, " + std::to_string(n_) +
                                    ")");
    }
    int lower_n = n_ - m;
    std::uint64_t mask = low_bits(lower_n);
    PauliString lower{lower_n, p1_ & mask, p2_ & mask};
    PauliString upper = m == 0 ? PauliString{0, 0, 0} : PauliString{m, p1_ >> lower_n, p2_ >> lower_n};
    return {lower, upper};
}

PauliString PauliString::concat(const PauliString &lower, const PauliString &upper) {
    int n = lower.n_ + upper.n_;
    if (n > kMaxQubits) {
        throw std::invalid_argument("concat: combined string exceeds 64 qubits");
    }
    if (upper.n_ == 0) {
        return lower;
    }
    return {n, lower.p1_ | (upper.p1_ << lower.n_), lower.p2_ | (upper.p2_ << lower.n_)};
}

bool PauliString::lexicographic_less(const PauliString &other) const {
    int common = n_ < other.n_ ? n_ : other.n_;
    std::uint64_t diff = (p1_ ^ other.p1_) | (p2_ ^ other.p2_);
    diff &= low_bits(common);
    if (diff == 0) {
        return n_ < other.n_;
    }
    int k = std::countr_zero(diff);
    int a = letter_rank((p1_ >> k) & 1, (p2_ >> k) & 1);
    int b = letter_rank((other.p1_ >> k) & 1, (other.p2_ >> k) & 1);
    return a < b;
}

}  // namespace prsim
