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

// End-to-end acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "prsim/fabric.hpp"
#include "prsim/formulas.hpp"
#include "prsim/hamiltonian.hpp"
#include "prsim/oracle.hpp"
#include "prsim/rpe.hpp"
#include "test_util.hpp"

using namespace prsim;
using namespace prsim::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

std::vector<Rotation> expand(const RotationGroup &g) {
    std::vector<Rotation> out;
    for (const Rotation &r : g.members) {
        out.push_back({PauliString::concat(r.pauli, g.suffix), r.angle});
    }
    return out;
}

/// Random stream whose rotations share a few suffixes, so grouping actually merges runs.
std::vector<Rotation> random_circuit(int n, int m, std::size_t length, std::mt19937_64 &rng) {
    std::vector<Rotation> out;
    std::vector<PauliString> suffixes;
    for (int k = 0; k < 3; ++k) {
        suffixes.push_back(random_pauli(m, rng));
    }
    while (out.size() < length) {
        const PauliString &suffix = suffixes[rng() % suffixes.size()];
        const std::size_t run = 1 + rng() % 8;
        for (std::size_t l = 0; l < run && out.size() < length; ++l) {
            out.push_back({PauliString::concat(random_pauli(n - m, rng), suffix), random_angle(rng)});
        }
    }
    return out;
}

Hamiltonian random_hamiltonian(int n, std::size_t count, double lambda, std::mt19937_64 &rng) {
    auto terms = random_terms(n, count, rng);
    const double scale = lambda / one_norm(terms);
    for (Term &t : terms) {
        t.coefficient *= scale;
    }
    return Hamiltonian(n, terms);
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(1);
    const auto start = Clock::now();
    double worst = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const int m = static_cast<int>(rng() % std::min(4, n));
        const std::size_t length = 1 + rng() % 200;
        auto psi = random_state(n, rng);
        auto circuit = random_circuit(n, m, length, rng);
        const Grouping grouping = trial % 2 == 0 ? Grouping::kGrouped : Grouping::kUngrouped;
        auto fabric = Fabric::create(n, m, psi);
        fabric.apply_stream(circuit, grouping);
        worst = std::max(worst, max_abs_diff(fabric.gather(), oracle::apply_sequential(psi, circuit)));
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-12 && elapsed <= 120,
            "500 circuits, max deviation " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

Outcome grouping_identity() {
    std::mt19937_64 rng(2);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int m = 1 + static_cast<int>(rng() % (n - 1));
        RotationGroup g{random_pauli(m, rng), random_rotations(n - m, 1 + rng() % 20, rng)};
        auto lhs = oracle::dense_product(expand(g), n);
        auto negated = g.members;
        for (Rotation &r : negated) {
            r.angle = -r.angle;
        }
        const Eigen::Index upper = Eigen::Index{1} << m;
        const oracle::DenseOperator q = oracle::dense_pauli(g.suffix);
        const oracle::DenseOperator id = oracle::DenseOperator::Identity(upper, upper);
        oracle::DenseOperator rhs = oracle::dense_tensor(oracle::dense_product(g.members, n - m), (id + q) / 2.0) +
                                    oracle::dense_tensor(oracle::dense_product(negated, n - m), (id - q) / 2.0);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-12, "200 groups, max deviation " + fmt(worst)};
}

Outcome worker_invariance() {
    std::mt19937_64 rng(3);
    const int n = 10;
    Hamiltonian h = random_hamiltonian(n, 30, 3.0, rng);
    auto split = split_deterministic(h, DeterministicCount{10}).for_execution();
    auto stream = evolution_stream(split, 0.1, 4, 20, StreamRng(77));
    auto circuit = random_circuit(n, 3, 200, rng);
    auto psi = random_state(n, rng);
    double worst = 0;
    for (const auto *rotations : {&stream.rotations, &circuit}) {
        auto reference = Fabric::create(n, 0, psi);
        reference.apply_stream(*rotations);
        const auto expected = reference.gather();
        for (int m : {1, 2, 3}) {
            for (ExecutionMode mode : {ExecutionMode::kSequential, ExecutionMode::kThreaded}) {
                FabricOptions opts;
                opts.mode = mode;
                auto fabric = Fabric::create(n, m, psi, opts);
                fabric.apply_stream(*rotations);
                worst = std::max(worst, max_abs_diff(fabric.gather(), expected));
            }
        }
    }
    // A regenerated randomized stream from the same seed is identical.
    auto again = evolution_stream(split, 0.1, 4, 20, StreamRng(77));
    const bool same_stream = again.rotations == stream.rotations;
    return {worst <= 1e-12 && same_stream,
            "W in {1,2,4,8}, sequential and threaded, max deviation " + fmt(worst)};
}

Outcome exchange_economy() {
    std::mt19937_64 rng(4);
    const int n = 10;
    const int m = 2;
    RotationGroup g{PauliString::from_word("XZ"), random_rotations(n - m, 100, rng)};
    auto rotations = expand(g);
    auto psi = random_state(n, rng);
    auto grouped = Fabric::create(n, m, psi);
    grouped.apply_stream(rotations, Grouping::kGrouped);
    auto ungrouped = Fabric::create(n, m, psi);
    ungrouped.apply_stream(rotations, Grouping::kUngrouped);
    const auto eg = grouped.counters().exchanges;
    const auto eu = ungrouped.counters().exchanges;
    const double diff = max_abs_diff(grouped.gather(), ungrouped.gather());
    return {eg == 1 && eu == 100 && diff <= 1e-12,
            "L=100 exchanges grouped " + std::to_string(eg) + ", ungrouped " + std::to_string(eu)};
}

Outcome unitarity() {
    std::mt19937_64 rng(5);
    const int n = 20;
    auto fabric = Fabric::create(n, 1, std::uint64_t{0});
    fabric.randomize(5);
    const double before = fabric.norm2();
    auto circuit = random_circuit(n, 1, 10000, rng);
    fabric.apply_stream(circuit);
    const double drift = std::abs(fabric.norm2() - before);
    return {drift <= 1e-10, "n=20, 10^4 rotations, norm drift " + fmt(drift)};
}

struct OrderInstance {
    std::string label;
    TrotterScan scan;
    TrotterFit oracle_fit;
    double bound = 0;
};

std::vector<OrderInstance> &order_instances() {
    static std::vector<OrderInstance> instances;
    return instances;
}

Outcome trotter_order() {
    const auto start = Clock::now();
    std::vector<double> deltas{0.1, 0.2, 0.4};
    bool ok = true;
    std::string detail;
    for (int n : {4, 5, 6}) {
        std::mt19937_64 rng(600 + n);
        Hamiltonian h = random_hamiltonian(n, 2 * n, 1.0, rng);
        auto split = split_deterministic(h, DeterministicCount{h.size()}).for_execution();
        auto gs = oracle::ground_state(h);
        ScanOptions opts;
        auto scan = trotter_error_scan(split, gs.vector, gs.energy, deltas, opts);
        std::vector<std::pair<double, double>> oracle_points;
        for (double delta : deltas) {
            oracle_points.emplace_back(
                delta, std::abs(oracle::effective_ground_energy(split, delta, 2).energy - gs.energy));
        }
        OrderInstance inst{"n=" + std::to_string(n), scan, fit_power_law(oracle_points), cgs_bound_partial(split)};
        if (!scan.fit) {
            ok = false;
            detail += " " + inst.label + ": " + scan.diagnostic + ";";
        } else {
            const double rel = std::abs(scan.fit->c_gs - inst.oracle_fit.c_gs) / inst.oracle_fit.c_gs;
            ok = ok && scan.fit->a >= 1.8 && scan.fit->a <= 2.3 && rel <= 0.2;
            detail += " " + inst.label + " a=" + fmt(scan.fit->a) + " C_gs=" + fmt(scan.fit->c_gs) +
                      " (oracle " + fmt(inst.oracle_fit.c_gs) + ");";
        }
        order_instances().push_back(std::move(inst));
    }
    const double elapsed = seconds_since(start);
    ok = ok && elapsed <= 600;
    return {ok, detail.substr(1) + " " + fmt(elapsed) + " s"};
}

Outcome bound_dominance() {
    if (order_instances().empty()) {
        return {false, "no instances from the Trotter order check"};
    }
    bool ok = true;
    std::string detail;
    for (const OrderInstance &inst : order_instances()) {
        if (!inst.scan.fit) {
            ok = false;
            detail += " " + inst.label + ": no fit;";
            continue;
        }
        ok = ok && inst.scan.fit->c_gs <= inst.bound;
        detail += " " + inst.label + " C_gs=" + fmt(inst.scan.fit->c_gs) + " <= bound " + fmt(inst.bound) + ";";
    }
    return {ok, detail.substr(1)};
}

Outcome rpe_precision() {
    std::mt19937_64 rng(8);
    double worst_ratio = 0;
    int cases = 0;
    for (int max_round = 0; max_round <= 12; ++max_round) {
        for (int trial = 0; trial < 50; ++trial) {
            const double delta = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
            const double energy =
                std::uniform_real_distribution<double>(-0.999, 0.999)(rng) * std::numbers::pi / delta;
            std::vector<Amplitude> z;
            for (int m = 0; m <= max_round; ++m) {
                z.push_back(std::polar(1.0, energy * delta * std::ldexp(1.0, m)));
            }
            const double err = std::abs(rpe_estimate(z, delta).energy - energy);
            worst_ratio = std::max(worst_ratio, err / rpe_resolution(delta, max_round));
            ++cases;
        }
    }
    return {worst_ratio <= 1.0,
            std::to_string(cases) + " signals, M=0..12, worst error / resolution " + fmt(worst_ratio)};
}

Outcome qdrift_statistics() {
    std::mt19937_64 rng(9);
    const int n = 5;
    const double t = 0.5;
    // The channel's O(lambda^2 t^2 / r) bias must sit below the statistical error of the ensemble.
    const std::size_t r = 20000;
    const int seeds = 400;
    Hamiltonian h = random_hamiltonian(n, 10, 2.0, rng);
    auto psi = random_state(n, rng);
    const Amplitude exact = inner_product(psi, oracle::exact_evolution(h, t, psi));
    TermSampler sampler(h.terms());
    double sum_re = 0, sum_im = 0, sq_re = 0, sq_im = 0;
    for (int s = 0; s < seeds; ++s) {
        auto engine = StreamRng(static_cast<std::uint64_t>(s)).engine(0, 0);
        auto stage = qdrift_stage(sampler, t, r, engine);
        const Amplitude z = inner_product(psi, oracle::apply_sequential(psi, stage));
        sum_re += z.real();
        sum_im += z.imag();
        sq_re += z.real() * z.real();
        sq_im += z.imag() * z.imag();
    }
    const double mean_re = sum_re / seeds;
    const double mean_im = sum_im / seeds;
    const double se_re = std::sqrt((sq_re / seeds - mean_re * mean_re) / (seeds - 1));
    const double se_im = std::sqrt((sq_im / seeds - mean_im * mean_im) / (seeds - 1));
    const double dev_re = std::abs(mean_re - exact.real()) / se_re;
    const double dev_im = std::abs(mean_im - exact.imag()) / se_im;

    // One term: every sample is that term, so the stage is the exact evolution.
    Hamiltonian single(n, std::vector<Term>{{-0.7, PauliString::from_word("XYZIX")}});
    auto engine = StreamRng(1).engine(0, 0);
    auto stage = qdrift_stage(TermSampler(single.terms()), t, 37, engine);
    const double single_err = max_abs_diff(oracle::apply_sequential(psi, stage),
                                           oracle::exact_evolution(single, t, psi));
    return {dev_re <= 3 && dev_im <= 3 && single_err <= 1e-12,
            std::to_string(seeds) + " seeds, deviation " + fmt(dev_re) + " / " + fmt(dev_im) +
                " SE (re/im), single-term error " + fmt(single_err)};
}

Outcome sample_reduction() {
    std::mt19937_64 rng(10);
    const int n = 4;
    Hamiltonian h = random_hamiltonian(n, 10, 4.0, rng);
    auto split = split_deterministic(h, RandomizedFraction{0.4}).for_execution();
    auto gs = oracle::ground_state(h);
    const double delta = 0.2;
    const int max_round = 8;
    const double resolution = rpe_resolution(delta, max_round);
    std::vector<double> deltas{delta};
    const int seeds = 100;
    int within = 0;
    double worst = 0;
    std::size_t r_full = 0, r_reduced = 0;
    for (int s = 0; s < seeds; ++s) {
        ScanOptions opts;
        opts.max_round = max_round;
        opts.max_round_cap = max_round;
        opts.seed = static_cast<std::uint64_t>(s);
        auto full = trotter_error_scan(split, gs.vector, gs.energy, deltas, opts);
        opts.reduction = 1.0 / 3;
        auto reduced = trotter_error_scan(split, gs.vector, gs.energy, deltas, opts);
        r_full = full.deltas[0].r;
        r_reduced = reduced.deltas[0].r;
        const double diff = std::abs(full.deltas[0].estimate.energy - reduced.deltas[0].estimate.energy);
        worst = std::isnan(diff) ? INFINITY : std::max(worst, diff);
        within += diff < resolution ? 1 : 0;
    }
    return {within == seeds && r_reduced < r_full,
            "lambda_R " + fmt(split.lambda_r) + ", r " + std::to_string(r_full) + " -> " + std::to_string(r_reduced) + ", " + std::to_string(within) +
                "/" + std::to_string(seeds) + " seeds within resolution " + fmt(resolution) + ", worst change " +
                fmt(worst)};
}

Outcome bench_direction() {
    auto rows = cli::run_bench(20, 1, {1, 10, 100}, 10, 11, ExecutionMode::kThreaded);
    bool ok = true;
    std::string detail = "n=20 W=2 ms/rotation";
    for (int len : {1, 10, 100}) {
        double grouped = 0, ungrouped = 0;
        for (const cli::BenchRow &row : rows) {
            if (row.length == len) {
                (row.grouped ? grouped : ungrouped) = row.ms_per_rotation;
            }
        }
        if (len > 1) {
            ok = ok && grouped < ungrouped;
        }
        detail += " L=" + std::to_string(len) + ": " + fmt(grouped) + " vs " + fmt(ungrouped) + ";";
    }
    return {ok, detail};
}

Outcome weak_scaling() {
    std::vector<std::pair<double, double>> points;
    std::string detail;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 16; n <= 24; ++n) {
        std::mt19937_64 rng(1200 + n);
        const std::size_t count = std::max<std::size_t>(8, std::size_t{1} << (27 - n));
        auto circuit = random_rotations(n, count, rng);
        auto fabric = Fabric::create(n, 0, std::uint64_t{0});
        fabric.randomize(static_cast<std::uint64_t>(n));
        double best = INFINITY;
        for (int rep = 0; rep < 3; ++rep) {
            const auto start = Clock::now();
            fabric.apply_stream(circuit);
            best = std::min(best, seconds_since(start));
        }
        const double throughput = static_cast<double>(count) / best;
        const double x = n * std::log(2.0);
        const double y = std::log(throughput);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        points.emplace_back(x, y);
        detail += " " + std::to_string(n) + ":" + fmt(throughput);
    }
    const double k = static_cast<double>(points.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    return {slope >= -1.3 && slope <= -0.7, "slope " + fmt(slope) + ", rotations/s" + detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"grouping identity", grouping_identity},
        {"worker-count invariance", worker_invariance},
        {"exchange economy", exchange_economy},
        {"unitarity", unitarity},
        {"Trotter order", trotter_order},
        {"bound dominance", bound_dominance},
        {"RPE precision", rpe_precision},
        {"qDRIFT statistics", qdrift_statistics},
        {"sample-reduction robustness", sample_reduction},
        {"benchmark direction", bench_direction},
        {"weak-scaling shape", weak_scaling},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("[%2zu] %s %s: %s\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
