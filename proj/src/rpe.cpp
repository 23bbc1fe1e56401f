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

#include "prsim/rpe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>
#include <memory>
#include <string>

#include "prsim/formulas.hpp"
#include "prsim/worker_pool.hpp"

namespace prsim {

namespace {

constexpr double kPi = std::numbers::pi;

/// Maps an angle to (-pi, pi].
double wrap_angle(double x) {
    double y = std::remainder(x, 2 * kPi);
    if (y <= -kPi) {
        y += 2 * kPi;
    }
    return y;
}

std::vector<RotationGroup> singleton_groups(std::span<const Rotation> rotations, int m) {
    std::vector<RotationGroup> out;
    out.reserve(rotations.size());
    for (const Rotation &r : rotations) {
        auto [lower, upper] = r.pauli.split_suffix(m);
        out.push_back(RotationGroup{upper, {Rotation{lower, r.angle}}});
    }
    return out;
}

}  // namespace

SignalRecord signal(const HamiltonianSplit &split, std::span<const Amplitude> psi0, double delta, int m,
                    std::size_t r, const StreamRng &rng, const SignalOptions &options) {
    if (options.repeats < 1) {
        throw std::invalid_argument("signal: repeats must be at least 1");
    }
    if (m < 0 || m > 40) {
        throw std::invalid_argument("signal: round index out of range");
    }
    const bool deterministic = split.randomized.empty();
    if (deterministic && r > 0) {
        throw std::invalid_argument("signal: samples requested from an empty H_R");
    }
    if (!deterministic && r == 0) {
        throw std::invalid_argument("signal: r = 0 leaves a non-empty H_R unrepresented");
    }
    const int pq = options.partition_qubits;
    const std::uint64_t steps = std::uint64_t{1} << m;
    const int runs = deterministic ? 1 : options.repeats;
    const auto start = std::chrono::steady_clock::now();

    std::vector<RotationGroup> det_groups;
    if (deterministic) {
        const RotationStream step = trotter2_step(split.deterministic, delta);
        det_groups = options.grouping == Grouping::kGrouped ? group_stream(step.rotations, pq)
                                                            : singleton_groups(step.rotations, pq);
    }

    SignalRecord rec;
    rec.m = m;
    rec.delta = delta;
    rec.r = r;
    rec.repeats = runs;
    Amplitude sum{0, 0};
    for (int rep = 0; rep < runs; ++rep) {
        Fabric fabric = Fabric::create(split.num_qubits, pq, psi0, options.fabric);
        if (deterministic) {
            for (std::uint64_t s = 0; s < steps; ++s) {
                fabric.apply_groups(det_groups);
            }
        } else {
            const StreamRng run_rng = rng.derive(static_cast<std::uint64_t>(rep));
            // Step 0 is the leftmost factor, so the last step acts first.
            for (std::uint64_t s = steps; s-- > 0;) {
                const RotationStream step = partially_randomized_step(split, delta, r, run_rng, s);
                fabric.apply_stream(step.rotations, options.grouping);
            }
        }
        const double drift = std::abs(fabric.norm2() - 1);
        if (drift > kNormDriftLimit) {
            throw NumericalGuardError("signal: norm drift " + std::to_string(drift) + " exceeds limit");
        }
        sum += fabric.inner_product(psi0);
        rec.rotations += fabric.counters().rotations;
        rec.exchanges += fabric.counters().exchanges;
    }
    rec.z = sum / static_cast<double>(runs) * std::polar(1.0, split.offset * delta * static_cast<double>(steps));
    if (std::abs(rec.z) > 1 + 1e-9) {
        throw NumericalGuardError("signal: |Z| = " + std::to_string(std::abs(rec.z)) + " exceeds 1");
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

double rpe_resolution(double delta, int max_round) { return kPi / (delta * std::ldexp(1.0, max_round + 1)); }

RpeEstimate rpe_estimate(std::span<const Amplitude> signals, double delta, double noise_floor) {
    if (signals.empty()) {
        throw std::invalid_argument("rpe_estimate: no signals");
    }
    if (!(delta > 0)) {
        throw std::invalid_argument("rpe_estimate: delta must be positive");
    }
    RpeEstimate out;
    if (std::abs(signals[0]) < noise_floor) {
        out.energy = std::nan("");
        return out;
    }
    double theta = std::arg(signals[0]);
    out.last_round = 0;
    out.converged = true;
    for (std::size_t m = 1; m < signals.size(); ++m) {
        if (std::abs(signals[m]) < noise_floor) {
            out.converged = false;
            break;
        }
        const double scale = std::ldexp(1.0, static_cast<int>(m));
        const double measured = std::arg(signals[m]);
        // Branch of measured + 2 pi j closest to the prediction 2^m theta.
        const double j = std::round((theta * scale - measured) / (2 * kPi));
        theta = (measured + 2 * kPi * j) / scale;
        out.last_round = static_cast<int>(m);
    }
    out.energy = wrap_angle(theta) / delta;
    out.resolution = rpe_resolution(delta, out.last_round);
    return out;
}

double nearest_alias(double energy, double reference, double delta) {
    const double period = 2 * kPi / delta;
    return energy - period * std::round((energy - reference) / period);
}

bool convergence_check(std::span<const double> estimates, double tol) {
    if (estimates.size() < 2) {
        return false;
    }
    const double last = estimates[estimates.size() - 1];
    const double prev = estimates[estimates.size() - 2];
    return std::abs(last - prev) <= tol * std::abs(last);
}

TrotterFit fit_power_law(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    }
    std::set<double> seen;
    double sx = 0;
    double sy = 0;
    for (const auto &[delta, eps] : points) {
        if (!(delta > 0) || !(eps > 0)) {
            throw std::invalid_argument("fit_power_law: step sizes and errors must be positive");
        }
        if (!seen.insert(delta).second) {
            throw std::invalid_argument("fit_power_law: duplicate step size");
        }
        sx += std::log(delta);
        sy += std::log(eps);
    }
    const double count = static_cast<double>(points.size());
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0;
    double sxy = 0;
    for (const auto &[delta, eps] : points) {
        const double dx = std::log(delta) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(eps) - my);
    }
    TrotterFit fit;
    fit.a = sxy / sxx;
    const double intercept = my - fit.a * mx;
    fit.c_gs = std::exp(intercept);
    double ss = 0;
    for (const auto &[delta, eps] : points) {
        const double res = std::log(eps) - (intercept + fit.a * std::log(delta));
        ss += res * res;
    }
    fit.residual = std::sqrt(ss / count);
    fit.points.assign(points.begin(), points.end());
    return fit;
}

namespace {

void fill_signals(DeltaScan &scan, const HamiltonianSplit &split, std::span<const Amplitude> psi0,
                  const StreamRng &rng, const ScanOptions &options, WorkerPool *pool) {
    const int first = static_cast<int>(scan.signals.size());
    const int count = scan.max_round + 1 - first;
    if (count <= 0) {
        return;
    }
    scan.signals.resize(scan.max_round + 1);
    auto cell = [&](int idx) {
        const int m = first + idx;
        scan.signals[m] = signal(split, psi0, scan.delta, m, scan.r, rng.derive(static_cast<std::uint64_t>(m)),
                                 options.signal);
    };
    if (pool != nullptr) {
        pool->run(count, cell);
    } else {
        for (int idx = 0; idx < count; ++idx) {
            cell(idx);
        }
    }
}

void evaluate(DeltaScan &scan, double reference, bool exact_signals, const ScanOptions &options) {
    std::vector<Amplitude> z;
    z.reserve(scan.signals.size());
    scan.eps_by_round.clear();
    for (const SignalRecord &rec : scan.signals) {
        z.push_back(rec.z);
        const RpeEstimate partial = rpe_estimate(z, scan.delta, options.noise_floor);
        scan.eps_by_round.push_back(std::isnan(partial.energy)
                                        ? std::nan("")
                                        : trotter_error(nearest_alias(partial.energy, reference, scan.delta), reference));
    }
    scan.estimate = rpe_estimate(z, scan.delta, options.noise_floor);
    if (std::isnan(scan.estimate.energy)) {
        scan.eps = std::nan("");
        scan.converged = false;
        scan.resolved = false;
        return;
    }
    scan.estimate.energy = nearest_alias(scan.estimate.energy, reference, scan.delta);
    scan.eps = trotter_error(scan.estimate.energy, reference);
    scan.converged = scan.estimate.converged && convergence_check(scan.eps_by_round, options.convergence_tol);
    // Noiseless signals pin the phase to rounding error, far below the worst-case resolution.
    scan.error_floor = exact_signals ? kExactSignalFloor * std::max(1.0, std::abs(reference)) : scan.estimate.resolution;
    scan.resolved = scan.estimate.last_round == scan.max_round && scan.eps > scan.error_floor;
}

}  // namespace

TrotterScan trotter_error_scan(const HamiltonianSplit &split, std::span<const Amplitude> psi0,
                               double reference_energy, std::span<const double> deltas, const ScanOptions &options) {
    if (deltas.empty()) {
        throw std::invalid_argument("trotter_error_scan: no step sizes");
    }
    if (options.max_round < 0 || options.max_round_cap < options.max_round) {
        throw std::invalid_argument("trotter_error_scan: invalid round limits");
    }
    std::unique_ptr<WorkerPool> pool;
    if (options.jobs > 1) {
        pool = std::make_unique<WorkerPool>(options.jobs);
    }
    TrotterScan out;
    out.reference_energy = reference_energy;
    const StreamRng base(options.seed);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double delta = deltas[i];
        if (!(delta > 0)) {
            throw std::invalid_argument("trotter_error_scan: step sizes must be positive");
        }
        const StreamRng rng = base.derive(i);
        DeltaScan scan;
        scan.delta = delta;
        for (int max_round = options.max_round;; ++max_round) {
            const std::size_t r =
                split.randomized.empty()
                    ? 0
                    : sample_count(options.kappa, split.lambda_r, delta, max_round, options.reduction);
            if (r != scan.r) {
                // The sample count depends on M, so randomized rounds are redrawn.
                scan.signals.clear();
                scan.r = r;
            }
            scan.max_round = max_round;
            fill_signals(scan, split, psi0, rng, options, pool.get());
            evaluate(scan, reference_energy, split.randomized.empty(), options);
            if (scan.converged || max_round >= options.max_round_cap) {
                break;
            }
        }
        out.deltas.push_back(std::move(scan));
    }

    std::vector<std::pair<double, double>> points;
    for (const DeltaScan &scan : out.deltas) {
        if (scan.resolved) {
            points.emplace_back(scan.delta, scan.eps);
        }
    }
    if (points.size() >= 3) {
        out.fit = fit_power_law(points);
    } else {
        out.diagnostic = "no signal: " + std::to_string(points.size()) + " of " + std::to_string(out.deltas.size()) +
                         " step sizes resolve a Trotter error above the error floor";
    }
    return out;
}

}  // namespace prsim
