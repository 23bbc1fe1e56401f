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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prsim/fabric.hpp"

namespace prsim::cli {

inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitInput = 3,
    kExitNumerical = 4,
};

/// Bad flags, unreadable paths, inconsistent options.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed Hamiltonian or state files.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    std::string hamiltonian_path;
    std::string state_path;
    std::vector<double> deltas{0.1, 0.2, 0.4};
    int rounds = 8;
    /// Upper limit for adaptive rounds in `rpe`; defaults to `rounds`.
    std::optional<int> rounds_cap;
    std::optional<std::size_t> ldet;
    std::optional<double> lambda_r_frac;
    std::optional<double> kappa;
    double reduce_samples = 1.0;
    std::uint64_t seed = 0;
    int repeats = 3;
    /// Partition qubits; the fabric runs 2^workers workers.
    int workers = 0;
    int jobs = 1;
    std::string out_path;
    std::vector<int> bench_lengths{1, 10, 100};
    int bench_repeats = 10;
    /// Qubit count for `bench`, which needs no Hamiltonian.
    int qubits = 0;
    bool timing = true;
};

/// Git blob object id: SHA-1 of "blob <size>\0" followed by the content.
std::string git_blob_sha1(std::string_view content);

struct BenchRow {
    int n = 0;
    int m = 0;
    int length = 0;
    bool grouped = false;
    double ms_per_rotation = 0;
    std::uint64_t exchanges = 0;
};

/// L rotations sharing one suffix on the top m qubits (non-diagonal when m > 0), applied grouped and
/// ungrouped to a random state; reports the mean over `repeats` applications.
std::vector<BenchRow> run_bench(int n, int m, const std::vector<int> &lengths, int repeats, std::uint64_t seed,
                                ExecutionMode mode);

/// Parses argv-style arguments (without the program name) and runs the subcommand. Returns an ExitCode.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace prsim::cli
