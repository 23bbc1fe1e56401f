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

#include <gtest/gtest.h>

#include <numbers>

#include "prsim/oracle.hpp"
#include "test_util.hpp"

using namespace prsim;
using namespace prsim::testing;

namespace {

constexpr double kPi = std::numbers::pi;

AmplitudeBlock block_of(std::vector<Amplitude> v) { return AmplitudeBlock(std::move(v)); }

std::vector<Amplitude> dense_apply(const oracle::DenseOperator &u, std::span<const Amplitude> v) {
    return oracle::from_dense(u * oracle::to_dense(v));
}

}  // namespace

TEST(amplitude_block, construction) {
    AmplitudeBlock b(3);
    EXPECT_EQ(b.size(), 8u);
    EXPECT_EQ(b.num_qubits(), 3);
    EXPECT_EQ(b[5], Amplitude(0));
    EXPECT_THROW(AmplitudeBlock(std::vector<Amplitude>(6)), std::invalid_argument);
    EXPECT_EQ(AmplitudeBlock(std::vector<Amplitude>(16)).num_qubits(), 4);
}

TEST(rotation, zero_angle_is_identity) {
    for (int q = 1; q <= 6; ++q) {
        auto psi = random_state(q);
        auto b = block_of(psi);
        apply_rotation(b, random_pauli(q), 0.0);
        EXPECT_EQ(to_vector(b), psi);
    }
}

TEST(rotation, x_quarter_turn) {
    auto b = block_of({1, 0});
    apply_rotation(b, PauliString::from_word("X"), kPi / 2);
    EXPECT_NEAR(std::abs(b[0]), 0, 1e-16);
    EXPECT_NEAR(std::abs(b[1] - Amplitude(0, 1)), 0, 1e-16);
}

TEST(rotation, z_eighth_turn) {
    auto b = block_of({0, 1});
    apply_rotation(b, PauliString::from_word("Z"), kPi / 4);
    EXPECT_NEAR(std::abs(b[0]), 0, 0);
    EXPECT_NEAR(std::abs(b[1] - std::polar(1.0, -kPi / 4)), 0, 1e-16);
}

TEST(rotation, identity_string_is_global_phase) {
    auto psi = random_state(5);
    auto b = block_of(psi);
    apply_rotation(b, PauliString(5), 0.7);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        EXPECT_NEAR(std::abs(b[i] - std::polar(1.0, 0.7) * psi[i]), 0, 1e-15);
    }
}

TEST(rotation, qubit_mismatch) {
    AmplitudeBlock b(3);
    EXPECT_THROW(apply_rotation(b, PauliString::from_word("XX"), 0.1), std::invalid_argument);
}

TEST(rotation, matches_dense) {
    for (int q = 1; q <= 10; ++q) {
        for (int trial = 0; trial < 6; ++trial) {
            auto psi = random_state(q);
            auto p = random_pauli(q);
            double phi = random_angle();
            auto b = block_of(psi);
            apply_rotation(b, p, phi);
            auto expected = dense_apply(oracle::dense_rotation(p, phi), psi);
            EXPECT_LE(max_abs_diff(to_vector(b), expected), 1e-12) << p.word();
        }
    }
}

TEST(rotation, flip_pairs_visit_each_index_once) {
    for (int q = 1; q <= 10; ++q) {
        for (int trial = 0; trial < 10; ++trial) {
            std::uint64_t flip = shared_rng()() & ((std::uint64_t{1} << q) - 1);
            if (flip == 0) {
                flip = 1;
            }
            std::vector<int> visits(std::size_t{1} << q, 0);
            std::uint64_t calls = 0;
            detail::for_each_flip_pair(visits.size(), flip, [&](std::uint64_t i, std::uint64_t j) {
                EXPECT_LT(i, j);
                EXPECT_EQ(i ^ j, flip);
                ++visits[i];
                ++visits[j];
                ++calls;
            });
            EXPECT_EQ(calls, visits.size() / 2);
            for (int v : visits) {
                ASSERT_EQ(v, 1) << "flip " << flip;
            }
        }
    }
}

TEST(rotation, unitarity_long_sequence) {
    const int q = 12;
    auto b = block_of(random_state(q));
    for (int l = 0; l < 10000; ++l) {
        apply_rotation(b, random_pauli(q), random_angle());
    }
    EXPECT_NEAR(norm2(b.amplitudes()), 1.0, 1e-12);
}

TEST(rotation_sequence, empty_is_identity) {
    auto psi = random_state(3);
    auto b = block_of(psi);
    apply_rotation_sequence(b, {}, 1);
    EXPECT_EQ(to_vector(b), psi);
}

TEST(rotation_sequence, negative_sign) {
    auto b = block_of({1, 0});
    std::vector<Rotation> seq{{PauliString::from_word("X"), kPi / 2}};
    apply_rotation_sequence(b, seq, -1);
    EXPECT_NEAR(std::abs(b[0]), 0, 1e-16);
    EXPECT_NEAR(std::abs(b[1] - Amplitude(0, -1)), 0, 1e-16);
    EXPECT_THROW(apply_rotation_sequence(b, seq, 2), std::invalid_argument);
}

TEST(rotation_sequence, first_entry_is_leftmost) {
    auto psi = random_state(1);
    const double a = 0.37;
    const double c = -1.21;
    std::vector<Rotation> seq{{PauliString::from_word("X"), a}, {PauliString::from_word("Y"), c}};
    auto b = block_of(psi);
    apply_rotation_sequence(b, seq, 1);
    oracle::DenseOperator u = oracle::dense_rotation(PauliString::from_word("X"), a) *
             oracle::dense_rotation(PauliString::from_word("Y"), c);
    EXPECT_LE(max_abs_diff(to_vector(b), dense_apply(u, psi)), 1e-12);
}

TEST(rotation_sequence, matches_dense_product) {
    for (int q = 1; q <= 8; ++q) {
        auto psi = random_state(q);
        auto seq = random_rotations(q, 20);
        for (int sign : {1, -1}) {
            auto b = block_of(psi);
            apply_rotation_sequence(b, seq, sign);
            auto signed_seq = seq;
            for (auto &r : signed_seq) {
                r.angle *= sign;
            }
            auto expected = dense_apply(oracle::dense_product(signed_seq, q), psi);
            EXPECT_LE(max_abs_diff(to_vector(b), expected), 1e-12);
        }
    }
}

TEST(butterfly, examples) {
    auto a = block_of({1, 0});
    auto b = block_of({0, 1});
    butterfly(a, b);
    const double s = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(a[0] - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(a[1] - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(b[0] - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(b[1] + s), 0, 1e-15);

    auto psi = random_state(3);
    auto x = block_of(psi);
    auto y = block_of(psi);
    butterfly(x, y);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        EXPECT_NEAR(std::abs(x[i] - std::sqrt(2.0) * psi[i]), 0, 1e-15);
        EXPECT_EQ(y[i], Amplitude(0));
    }
}

TEST(butterfly, involution) {
    for (int q = 1; q <= 8; ++q) {
        auto u = random_state(q);
        auto v = random_state(q);
        auto a = block_of(u);
        auto b = block_of(v);
        butterfly(a, b);
        butterfly(a, b);
        EXPECT_LE(max_abs_diff(to_vector(a), u), 1e-14);
        EXPECT_LE(max_abs_diff(to_vector(b), v), 1e-14);
    }
    AmplitudeBlock a(2);
    AmplitudeBlock b(3);
    EXPECT_THROW(butterfly(a, b), std::invalid_argument);
}

TEST(accumulate, adds) {
    auto a = block_of({1, 2});
    auto b = block_of({Amplitude(0, 1), -2});
    accumulate(a, b);
    EXPECT_EQ(a[0], Amplitude(1, 1));
    EXPECT_EQ(a[1], Amplitude(0));
}

TEST(inner_product, examples) {
    auto psi = random_state(4);
    EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0, 1e-14);
    EXPECT_EQ(inner_product(basis_state(2, 0), basis_state(2, 1)), Amplitude(0));
    auto phi = random_state(4);
    EXPECT_NEAR(std::abs(inner_product(psi, phi) - std::conj(inner_product(phi, psi))), 0, 1e-14);
    EXPECT_NEAR(norm2(psi), 1.0, 1e-14);
    EXPECT_THROW(inner_product(psi, basis_state(2, 0)), std::invalid_argument);
}

TEST(state_text, parses_bitstrings_and_indices) {
    auto v = parse_state_text("# bell-ish\n100 0.6 0\n2 0 0.8\n", 3);
    ASSERT_EQ(v.size(), 8u);
    EXPECT_EQ(v[1], Amplitude(0.6, 0));  // qubit 1 set
    EXPECT_EQ(v[2], Amplitude(0, 0.8));
    EXPECT_EQ(v[0], Amplitude(0));
}

TEST(state_text, errors) {
    EXPECT_THROW(parse_state_text("9 1 0\n", 3), std::invalid_argument);
    EXPECT_THROW(parse_state_text("1 1 0\n1 0 1\n", 3), std::invalid_argument);
    EXPECT_THROW(parse_state_text("x 1 0\n", 3), std::invalid_argument);
    EXPECT_THROW(parse_state_text("1 1\n", 3), std::invalid_argument);
}

TEST(basis_state, layout) {
    auto v = basis_state(4, 13);
    EXPECT_EQ(v.size(), 16u);
    EXPECT_EQ(v[13], Amplitude(1));
    EXPECT_THROW(basis_state(2, 4), std::invalid_argument);
}
