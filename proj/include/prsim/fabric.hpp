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
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "prsim/circuit.hpp"
#include "prsim/pauli.hpp"
#include "prsim/state.hpp"

namespace prsim {

class WorkerPool;

/// Partner and phase for each worker k: suffix |k> = phase_k |partner_k>.
struct ExchangePlan {
    std::vector<std::uint32_t> partner;
    std::vector<Phase4> phase;
};

ExchangePlan plan_exchange(const PauliString &suffix);

enum class ExecutionMode {
    /// All workers simulated in order on the calling thread.
    kSequential,
    /// One pool thread per worker, joined at every exchange rendezvous.
    kThreaded,
};

struct FabricOptions {
    ExecutionMode mode = ExecutionMode::kSequential;
    /// Upper bound on total qubits accepted by create().
    int max_qubits = 30;
    /// Send diagonal suffixes through the exchange path anyway (testing aid).
    bool force_exchange = false;
    /// Rescale the initial state instead of rejecting it when its norm is off.
    bool renormalize = false;
};

struct FabricCounters {
    std::uint64_t exchanges = 0;
    std::uint64_t rotations = 0;
    std::uint64_t groups = 0;
    double group_seconds = 0;
};

enum class Grouping { kGrouped, kUngrouped };

/// Partitioned state over W = 2^m workers. Worker k owns partition A_k holding global
/// amplitudes [k N, (k+1) N) with N = 2^(n-m), plus a mirror buffer B_k of the same size.
class Fabric {
   public:
    static Fabric create(int num_qubits, int partition_qubits, std::span<const Amplitude> initial,
                         const FabricOptions &options = {});
    static Fabric create(int num_qubits, int partition_qubits, std::uint64_t basis_index,
                         const FabricOptions &options = {});
    /// As create(), with the worker count given directly; throws unless it is a power of two.
    static Fabric with_workers(int num_qubits, std::uint64_t workers, std::span<const Amplitude> initial,
                               const FabricOptions &options = {});

    Fabric(Fabric &&) noexcept;
    Fabric &operator=(Fabric &&) noexcept;
    ~Fabric();

    int num_qubits() const { return n_; }
    int partition_qubits() const { return m_; }
    int local_qubits() const { return n_ - m_; }
    std::size_t workers() const { return parts_.size(); }
    const FabricCounters &counters() const { return counters_; }
    void reset_counters() { counters_ = {}; }

    const AmplitudeBlock &partition(std::size_t k) const { return parts_[k]; }
    const AmplitudeBlock &buffer(std::size_t k) const { return buffers_[k]; }

    /// Bytes held in partitions plus buffers.
    std::size_t allocated_bytes() const;

    /// Applies prod_l exp(i angle_l members_l (x) suffix) with one exchange at most.
    void apply_group(const RotationGroup &group);

    /// Applies the operator product represented by a full-width rotation list.
    void apply_stream(std::span<const Rotation> rotations, Grouping grouping = Grouping::kGrouped);

    /// Applies groups as one operator product, first group leftmost.
    void apply_groups(std::span<const RotationGroup> groups);

    /// Concatenated partitions; throws above 26 qubits.
    std::vector<Amplitude> gather() const;
    /// <reference|state>, summed from per-worker partial products.
    Amplitude inner_product(std::span<const Amplitude> reference) const;
    double norm2() const;

    /// Overwrites every partition with independent uniform values in [-1, 1) and normalizes.
    void randomize(std::uint64_t seed);

   private:
    Fabric(int n, int m, const FabricOptions &options);
    void for_each_worker(const std::function<void(int)> &fn);

    int n_ = 0;
    int m_ = 0;
    FabricOptions options_;
    std::vector<AmplitudeBlock> parts_;
    std::vector<AmplitudeBlock> buffers_;
    FabricCounters counters_;
    std::unique_ptr<WorkerPool> pool_;
};

}  // namespace prsim
