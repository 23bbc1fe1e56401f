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

#include "prsim/fabric.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "prsim/hamiltonian.hpp"
#include "prsim/worker_pool.hpp"

namespace prsim {

ExchangePlan plan_exchange(const PauliString &suffix) {
    const int m = suffix.num_qubits();
    if (m > 31) {
        throw std::invalid_argument("plan_exchange: suffix too wide for a worker index");
    }
    const std::uint32_t workers = std::uint32_t{1} << m;
    ExchangePlan plan;
    plan.partner.resize(workers);
    plan.phase.resize(workers);
    for (std::uint32_t k = 0; k < workers; ++k) {
        BasisImage image = suffix.apply_to_basis(k);
        plan.partner[k] = static_cast<std::uint32_t>(image.index);
        plan.phase[k] = image.phase;
    }
    return plan;
}

Fabric::Fabric(int n, int m, const FabricOptions &options) : n_(n), m_(m), options_(options) {
    if (n < 1 || n > options.max_qubits) {
        throw std::invalid_argument("Fabric: qubit count " + std::to_string(n) + " outside [1, " +
                                    std::to_string(options.max_qubits) + "]");
    }
    if (m < 0 || m >= n) {
        throw std::invalid_argument("Fabric: partition exponent m=" + std::to_string(m) + " outside [0, n)");
    }
    const std::size_t workers = std::size_t{1} << m;
    parts_.reserve(workers);
    buffers_.reserve(workers);
    for (std::size_t k = 0; k < workers; ++k) {
        parts_.emplace_back(n - m);
        buffers_.emplace_back(n - m);
    }
    if (options.mode == ExecutionMode::kThreaded && workers > 1) {
        pool_ = std::make_unique<WorkerPool>(static_cast<int>(workers));
    }
}

Fabric::Fabric(Fabric &&) noexcept = default;
Fabric &Fabric::operator=(Fabric &&) noexcept = default;
Fabric::~Fabric() = default;

Fabric Fabric::create(int num_qubits, int partition_qubits, std::span<const Amplitude> initial,
                      const FabricOptions &options) {
    Fabric f(num_qubits, partition_qubits, options);
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (initial.size() != dim) {
        throw std::invalid_argument("Fabric: initial state has " + std::to_string(initial.size()) +
                                    " amplitudes, expected " + std::to_string(dim));
    }
    double norm = prsim::norm2(initial);
    double scale = 1;
    if (std::abs(norm - 1) > 1e-8) {
        if (!options.renormalize || norm == 0) {
            throw std::invalid_argument("Fabric: initial state is not normalized (norm^2 = " + std::to_string(norm) +
                                        ")");
        }
        scale = 1 / std::sqrt(norm);
    }
    const std::size_t local = std::size_t{1} << f.local_qubits();
    for (std::size_t k = 0; k < f.workers(); ++k) {
        for (std::size_t i = 0; i < local; ++i) {
            f.parts_[k][i] = initial[k * local + i] * scale;
        }
    }
    return f;
}

Fabric Fabric::create(int num_qubits, int partition_qubits, std::uint64_t basis_index, const FabricOptions &options) {
    Fabric f(num_qubits, partition_qubits, options);
    if (basis_index >= (std::uint64_t{1} << num_qubits)) {
        throw std::invalid_argument("Fabric: basis index out of range");
    }
    const int local = f.local_qubits();
    f.parts_[basis_index >> local][basis_index & ((std::uint64_t{1} << local) - 1)] = 1;
    return f;
}

Fabric Fabric::with_workers(int num_qubits, std::uint64_t workers, std::span<const Amplitude> initial,
                            const FabricOptions &options) {
    if (workers == 0 || (workers & (workers - 1)) != 0) {
        throw std::invalid_argument("Fabric: worker count " + std::to_string(workers) + " is not a power of two");
    }
    return create(num_qubits, std::countr_zero(workers), initial, options);
}

std::size_t Fabric::allocated_bytes() const {
    std::size_t total = 0;
    for (std::size_t k = 0; k < workers(); ++k) {
        total += (parts_[k].size() + buffers_[k].size()) * sizeof(Amplitude);
    }
    return total;
}

void Fabric::for_each_worker(const std::function<void(int)> &fn) {
    const int w = static_cast<int>(workers());
    if (pool_) {
        pool_->run(w, fn);
        return;
    }
    for (int k = 0; k < w; ++k) {
        fn(k);
    }
}

void Fabric::apply_group(const RotationGroup &group) {
    if (group.suffix.num_qubits() != m_) {
        throw std::invalid_argument("apply_group: suffix on " + std::to_string(group.suffix.num_qubits()) +
                                    " qubits, fabric partitions " + std::to_string(m_));
    }
    for (const Rotation &r : group.members) {
        if (r.pauli.num_qubits() != local_qubits()) {
            throw std::invalid_argument("apply_group: member on " + std::to_string(r.pauli.num_qubits()) +
                                        " qubits, expected " + std::to_string(local_qubits()));
        }
    }
    const auto start = std::chrono::steady_clock::now();
    const std::span<const Rotation> members = group.members;
    const ExchangePlan plan = plan_exchange(group.suffix);

    if (group.suffix.is_diagonal() && !options_.force_exchange) {
        // suffix |k> = +-|k>: the member product runs with that sign, no partner needed.
        for_each_worker([&](int k) {
            const int sign = plan.phase[k] == Phase4::one() ? 1 : -1;
            apply_rotation_sequence(parts_[k], members, sign);
        });
    } else {
        // (i) B_k <- conj(w_k) A_{k'}; rendezvous before anyone overwrites A.
        for_each_worker([&](int k) {
            const Phase4 w = plan.phase[k].conj();
            const AmplitudeBlock &src = parts_[plan.partner[k]];
            AmplitudeBlock &dst = buffers_[k];
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] = w.apply(src[i]);
            }
        });
        // (ii) butterfly, (iii) +/- member products and recombination. The 1/2 and 1 weights
        // carry the same net normalization as two 1/sqrt(2) steps.
        for_each_worker([&](int k) {
            butterfly(parts_[k], buffers_[k], 0.5);
            apply_rotation_sequence(parts_[k], members, +1);
            apply_rotation_sequence(buffers_[k], members, -1);
            accumulate(parts_[k], buffers_[k]);
        });
        if (!group.suffix.is_diagonal()) {
            counters_.exchanges += 1;
        }
    }
    counters_.rotations += members.size();
    counters_.groups += 1;
    counters_.group_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void Fabric::apply_groups(std::span<const RotationGroup> groups) {
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        apply_group(*it);
    }
}

void Fabric::apply_stream(std::span<const Rotation> rotations, Grouping grouping) {
    for (const Rotation &r : rotations) {
        if (r.pauli.num_qubits() != n_) {
            throw std::invalid_argument("apply_stream: rotation on " + std::to_string(r.pauli.num_qubits()) +
                                        " qubits, fabric has " + std::to_string(n_));
        }
    }
    if (grouping == Grouping::kGrouped) {
        std::vector<RotationGroup> groups = group_stream(rotations, m_);
        apply_groups(groups);
        return;
    }
    for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
        auto [lower, upper] = it->pauli.split_suffix(m_);
        apply_group(RotationGroup{upper, {Rotation{lower, it->angle}}});
    }
}

std::vector<Amplitude> Fabric::gather() const {
    if (n_ > 26) {
        throw std::invalid_argument("gather: refusing to materialize more than 26 qubits");
    }
    std::vector<Amplitude> out;
    out.reserve(std::size_t{1} << n_);
    for (const AmplitudeBlock &part : parts_) {
        out.insert(out.end(), part.amplitudes().begin(), part.amplitudes().end());
    }
    return out;
}

Amplitude Fabric::inner_product(std::span<const Amplitude> reference) const {
    const std::size_t local = std::size_t{1} << local_qubits();
    if (reference.size() != local * workers()) {
        throw std::invalid_argument("inner_product: reference dimension mismatch");
    }
    // <reference|fabric> accumulated per worker in k order.
    Amplitude total{0, 0};
    for (std::size_t k = 0; k < workers(); ++k) {
        total += prsim::inner_product(reference.subspan(k * local, local), parts_[k].amplitudes());
    }
    return total;
}

double Fabric::norm2() const {
    double total = 0;
    for (const AmplitudeBlock &part : parts_) {
        total += prsim::norm2(part);
    }
    return total;
}

void Fabric::randomize(std::uint64_t seed) {
    for_each_worker([&](int k) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k)};
        std::mt19937_64 engine(seq);
        std::uniform_real_distribution<double> dist(-1, 1);
        for (Amplitude &z : parts_[k].amplitudes()) {
            z = {dist(engine), dist(engine)};
        }
    });
    const double scale = 1 / std::sqrt(norm2());
    for_each_worker([&](int k) {
        for (Amplitude &z : parts_[k].amplitudes()) {
            z *= scale;
        }
    });
}

}  // namespace prsim
