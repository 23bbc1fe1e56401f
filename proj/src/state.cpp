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

#include "prsim/state.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace prsim {

AmplitudeBlock::AmplitudeBlock(int num_qubits) : q_(num_qubits) {
    if (num_qubits < 0 || num_qubits > 40) {
        throw std::invalid_argument("AmplitudeBlock: qubit count out of range");
    }
    data_.assign(std::size_t{1} << num_qubits, Amplitude{0, 0});
}

AmplitudeBlock::AmplitudeBlock(std::vector<Amplitude> amplitudes) : data_(std::move(amplitudes)) {
    std::size_t n = data_.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("AmplitudeBlock: length " + std::to_string(n) + " is not a power of two");
    }
    q_ = std::countr_zero(n);
}

void AmplitudeBlock::fill(Amplitude value) { std::fill(data_.begin(), data_.end(), value); }

namespace {

/// z * (re + i im) without the NaN-recovery path of std::complex multiplication.
inline Amplitude mul(Amplitude z, double re, double im) {
    return {z.real() * re - z.imag() * im, z.real() * im + z.imag() * re};
}

}  // namespace

void apply_rotation(AmplitudeBlock &block, const PauliString &pauli, double angle) {
    if (pauli.num_qubits() != block.num_qubits()) {
        throw std::invalid_argument("apply_rotation: Pauli string on " + std::to_string(pauli.num_qubits()) +
                                    " qubits, block on " + std::to_string(block.num_qubits()));
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const std::uint64_t p1 = pauli.x_mask();
    const std::uint64_t p2 = pauli.z_mask();
    Amplitude *a = block.amplitudes().data();
    const std::size_t size = block.size();

    if (p1 == 0) {
        // Diagonal: a_i <- (c + i s (-1)^parity(p2 & i)) a_i.
        if (p2 == 0) {
            for (std::size_t i = 0; i < size; ++i) {
                a[i] = mul(a[i], c, s);
            }
            return;
        }
        for (std::size_t i = 0; i < size; ++i) {
            a[i] = mul(a[i], c, (std::popcount(p2 & i) & 1) ? -s : s);
        }
        return;
    }

    // P|j> = w_j |j ^ p1>, so a'_i = c a_i + i s w_j a_j with j = i ^ p1.
    const Amplitude is_y = Amplitude{0, s} * pauli.y_phase().value();
    // parity(p2 & j) = parity(p2 & i) ^ parity(p2 & p1).
    const bool pair_odd = std::popcount(p2 & p1) & 1;
    detail::for_each_flip_pair(size, p1, [&](std::uint64_t i, std::uint64_t j) {
        const Amplitude ai = a[i];
        const Amplitude aj = a[j];
        const bool odd_i = std::popcount(p2 & i) & 1;
        const Amplitude fi = odd_i ? -is_y : is_y;
        const Amplitude fj = (odd_i != pair_odd) ? -is_y : is_y;
        const Amplitude gj = mul(aj, fj.real(), fj.imag());
        const Amplitude gi = mul(ai, fi.real(), fi.imag());
        a[i] = {c * ai.real() + gj.real(), c * ai.imag() + gj.imag()};
        a[j] = {c * aj.real() + gi.real(), c * aj.imag() + gi.imag()};
    });
}

void apply_rotation_sequence(AmplitudeBlock &block, std::span<const Rotation> sequence, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("apply_rotation_sequence: sign must be +1 or -1");
    }
    for (auto it = sequence.rbegin(); it != sequence.rend(); ++it) {
        apply_rotation(block, it->pauli, sign * it->angle);
    }
}

void butterfly(AmplitudeBlock &a, AmplitudeBlock &b, double scale) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("butterfly: block length mismatch");
    }
    Amplitude *x = a.amplitudes().data();
    Amplitude *y = b.amplitudes().data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Amplitude u = x[i];
        const Amplitude v = y[i];
        x[i] = (u + v) * scale;
        y[i] = (u - v) * scale;
    }
}

void accumulate(AmplitudeBlock &a, const AmplitudeBlock &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("accumulate: block length mismatch");
    }
    Amplitude *x = a.amplitudes().data();
    const Amplitude *y = b.amplitudes().data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        x[i] += y[i];
    }
}

Amplitude inner_product(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner_product: length mismatch");
    }
    double re = 0;
    double im = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        // conj(a) * b
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm2(std::span<const Amplitude> a) {
    double total = 0;
    for (const Amplitude &z : a) {
        total += z.real() * z.real() + z.imag() * z.imag();
    }
    return total;
}

std::vector<Amplitude> basis_state(int num_qubits, std::uint64_t index) {
    if (num_qubits < 0 || num_qubits > 40) {
        throw std::invalid_argument("basis_state: qubit count out of range");
    }
    std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw std::invalid_argument("basis_state: index out of range");
    }
    std::vector<Amplitude> out(dim);
    out[index] = 1;
    return out;
}

namespace {

std::uint64_t parse_index(const std::string &token, int num_qubits, int line_no) {
    bool binary = static_cast<int>(token.size()) == num_qubits &&
                  std::all_of(token.begin(), token.end(), [](char ch) { return ch == '0' || ch == '1'; });
    std::uint64_t index = 0;
    if (binary) {
        for (int k = 0; k < num_qubits; ++k) {
            if (token[k] == '1') {
                index |= std::uint64_t{1} << k;
            }
        }
        return index;
    }
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::invalid_argument("state line " + std::to_string(line_no) + ": bad index '" + token + "'");
    }
    return index;
}

}  // namespace

std::vector<Amplitude> parse_state_text(std::string_view text, int num_qubits) {
    std::vector<Amplitude> out = basis_state(num_qubits, 0);
    out[0] = 0;
    std::set<std::uint64_t> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string token;
        if (!(fields >> token)) {
            continue;
        }
        double re = 0;
        double im = 0;
        std::string extra;
        if (!(fields >> re >> im) || (fields >> extra)) {
            throw std::invalid_argument("state line " + std::to_string(line_no) +
                                        ": expected '<index> <re> <im>'");
        }
        std::uint64_t index = parse_index(token, num_qubits, line_no);
        if (index >= out.size()) {
            throw std::invalid_argument("state line " + std::to_string(line_no) + ": index out of range");
        }
        if (!seen.insert(index).second) {
            throw std::invalid_argument("state line " + std::to_string(line_no) + ": duplicate index");
        }
        out[index] = {re, im};
    }
    return out;
}

}  // namespace prsim
