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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prsim/fabric.hpp"
#include "prsim/hamiltonian.hpp"
#include "prsim/rng.hpp"
#include "prsim/state.hpp"

namespace prsim {

/// Raised when a run violates a numerical invariant (norm drift, |Z| > 1).
class NumericalGuardError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kNormDriftLimit = 1e-9;

/// Z_m = <psi| exp(i delta H~(delta) 2^m) |psi> for one step size and round.
struct SignalRecord {
    int m = 0;
    double delta = 0;
    Amplitude z{1, 0};
    std::size_t r = 0;
    int repeats = 1;
    std::uint64_t rotations = 0;
    std::uint64_t exchanges = 0;
    double wall_ms = 0;
};

struct SignalOptions {
    /// Workers per fabric are 2^partition_qubits.
    int partition_qubits = 0;
    FabricOptions fabric;
    Grouping grouping = Grouping::kGrouped;
    /// Independent circuit runs averaged into Z; deterministic streams run once and record 1.
    int repeats = 3;
};

/// Evolves a fresh fabric holding psi0 through 2^m partially randomized steps of the split (in
/// its stored term order) and returns the averaged overlap, including the offset phase.
/// Repeat j draws its samples from rng.derive(j).
SignalRecord signal(const HamiltonianSplit &split, std::span<const Amplitude> psi0, double delta, int m,
                    std::size_t r, const StreamRng &rng, const SignalOptions &options = {});

struct RpeEstimate {
    double energy = 0;
    /// Highest round that entered the estimate; -1 when round 0 was already below the floor.
    int last_round = -1;
    bool converged = false;
    /// pi / (delta 2^(last_round + 1)).
    double resolution = 0;
};

inline constexpr double kDefaultNoiseFloor = 0.05;

/// Relative error floor for estimates from noiseless (deterministic) signals.
inline constexpr double kExactSignalFloor = 1e-9;

/// Phase-doubling refinement over Z_0..Z_M: start from arg(Z_0) and at round m take the branch of
/// arg(Z_m) / 2^m closest to the running estimate. Rounds with |Z_m| below the noise floor stop
/// the refinement and mark the estimate unconverged. The energy is returned in (-pi/delta, pi/delta].
RpeEstimate rpe_estimate(std::span<const Amplitude> signals, double delta, double noise_floor = kDefaultNoiseFloor);

/// pi / (delta 2^(M+1)).
double rpe_resolution(double delta, int max_round);

/// Shifts `energy` by a multiple of 2 pi / delta to the alias closest to `reference`.
double nearest_alias(double energy, double reference, double delta);

inline double trotter_error(double estimate, double reference) { return std::abs(estimate - reference); }

/// True when the last two estimates agree within `tol` relative to the last one.
bool convergence_check(std::span<const double> estimates, double tol = 0.05);

/// eps = C_gs delta^a.
struct TrotterFit {
    double c_gs = 0;
    double a = 0;
    /// RMS of the log-space residuals.
    double residual = 0;
    std::vector<std::pair<double, double>> points;
};

/// Least squares on (log delta, log eps). Needs at least 3 points with distinct positive delta and
/// positive eps.
TrotterFit fit_power_law(std::span<const std::pair<double, double>> points);

struct ScanOptions {
    int max_round = 8;
    /// Raise M up to this value while the error estimate is unconverged.
    int max_round_cap = 8;
    std::optional<double> kappa;
    double reduction = 1.0;
    std::uint64_t seed = 0;
    /// Concurrent (delta, round) cells.
    int jobs = 1;
    double noise_floor = kDefaultNoiseFloor;
    double convergence_tol = 0.05;
    SignalOptions signal;
};

struct DeltaScan {
    double delta = 0;
    int max_round = 0;
    std::size_t r = 0;
    std::vector<SignalRecord> signals;
    RpeEstimate estimate;
    double eps = 0;
    /// eps from the estimates using rounds 0..M' for every M' <= M.
    std::vector<double> eps_by_round;
    bool converged = false;
    /// Smallest error the estimate can distinguish from zero: the RPE resolution for sampled
    /// streams, a rounding-level floor for deterministic ones.
    double error_floor = 0;
    /// Every round entered the estimate and eps exceeds error_floor, so it can enter the fit.
    bool resolved = false;
};

struct TrotterScan {
    std::vector<DeltaScan> deltas;
    std::optional<TrotterFit> fit;
    double reference_energy = 0;
    /// Empty on success; explains a missing fit otherwise.
    std::string diagnostic;
};

/// Signals, RPE estimates, Trotter errors against `reference_energy` and the power-law fit
/// for each step size.
TrotterScan trotter_error_scan(const HamiltonianSplit &split, std::span<const Amplitude> psi0,
                               double reference_energy, std::span<const double> deltas, const ScanOptions &options);

}  // namespace prsim
