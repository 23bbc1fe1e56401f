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

#include "commands.hpp"

#include <openssl/sha.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "prsim/formulas.hpp"
#include "prsim/hamiltonian.hpp"
#include "prsim/oracle.hpp"
#include "prsim/rpe.hpp"

namespace prsim::cli {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
    return buf;
}

std::string read_file(const std::string &path, const char *what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(std::string("cannot read ") + what + " file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loaded inputs shared by simulate, rpe and bound.
struct Problem {
    Hamiltonian hamiltonian;
    std::string hamiltonian_sha1;
    HamiltonianSplit split;
};

Problem load_problem(const RunConfig &config) {
    if (config.hamiltonian_path.empty()) {
        throw ConfigError("--hamiltonian is required for '" + config.subcommand + "'");
    }
    const std::string text = read_file(config.hamiltonian_path, "hamiltonian");
    Problem p;
    p.hamiltonian_sha1 = git_blob_sha1(text);
    try {
        p.hamiltonian = Hamiltonian::parse(text);
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    if (config.ldet && config.lambda_r_frac) {
        throw ConfigError("--ldet and --lambda-r-frac are mutually exclusive");
    }
    try {
        if (config.lambda_r_frac) {
            p.split = split_deterministic(p.hamiltonian, RandomizedFraction{*config.lambda_r_frac});
        } else {
            const std::size_t count = config.ldet.value_or(p.hamiltonian.size());
            p.split = split_deterministic(p.hamiltonian, DeterministicCount{count});
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return p;
}

/// Initial state: the state file if given, else the oracle ground state up to 10 qubits, else |0>.
std::vector<Amplitude> load_state(const RunConfig &config, const Hamiltonian &h, std::string &description) {
    const int n = h.num_qubits();
    if (!config.state_path.empty()) {
        const std::string text = read_file(config.state_path, "state");
        std::vector<Amplitude> psi;
        try {
            psi = parse_state_text(text, n);
        } catch (const std::invalid_argument &e) {
            throw InputError(e.what());
        }
        double norm2 = 0;
        for (const Amplitude &a : psi) {
            norm2 += std::norm(a);
        }
        if (!(norm2 > 0)) {
            throw InputError("state file '" + config.state_path + "' has zero norm");
        }
        const double scale = 1 / std::sqrt(norm2);
        for (Amplitude &a : psi) {
            a *= scale;
        }
        description = config.state_path + " sha1=" + git_blob_sha1(text);
        return psi;
    }
    if (n <= oracle::kMaxHamiltonianQubits) {
        description = "ground state";
        return oracle::ground_state(h).vector;
    }
    description = "basis 0";
    return basis_state(n, 0);
}

void check_common(const RunConfig &config, int n) {
    if (config.workers < 0 || config.workers > n) {
        throw ConfigError("--workers must lie in [0, " + std::to_string(n) + "]");
    }
    if (config.rounds < 0 || config.rounds > 30) {
        throw ConfigError("--rounds must lie in [0, 30]");
    }
    if (config.rounds_cap && (*config.rounds_cap < config.rounds || *config.rounds_cap > 30)) {
        throw ConfigError("--rounds-cap must lie in [--rounds, 30]");
    }
    if (config.repeats < 1) {
        throw ConfigError("--repeats must be at least 1");
    }
    if (config.jobs < 1) {
        throw ConfigError("--jobs must be at least 1");
    }
    if (!(config.reduce_samples > 0 && config.reduce_samples <= 1)) {
        throw ConfigError("--reduce-samples must lie in (0, 1]");
    }
    if (config.kappa && !(*config.kappa > 0)) {
        throw ConfigError("--kappa must be positive");
    }
    if (config.deltas.empty()) {
        throw ConfigError("at least one --delta is required");
    }
    for (double d : config.deltas) {
        if (!std::isfinite(d) || d < 0) {
            throw ConfigError("--delta values must be finite and non-negative");
        }
    }
}

SignalOptions signal_options(const RunConfig &config) {
    SignalOptions opts;
    opts.partition_qubits = config.workers;
    opts.fabric.mode = config.workers > 0 ? ExecutionMode::kThreaded : ExecutionMode::kSequential;
    opts.repeats = config.repeats;
    return opts;
}

std::string join(const std::vector<double> &xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + fmt(xs[i]);
    }
    return s;
}

void write_header(std::ostream &out, const RunConfig &config, const std::string &hash) {
    out << "# prsim " << kVersion << "\n";
    out << "# command: " << config.subcommand << "\n";
    if (!config.hamiltonian_path.empty()) {
        out << "# hamiltonian: " << config.hamiltonian_path << "\n";
        out << "# hamiltonian_sha1: " << hash << "\n";
    }
    out << "# deltas: " << join(config.deltas) << "\n";
    out << "# rounds: " << config.rounds << "\n";
    out << "# rounds_cap: " << config.rounds_cap.value_or(config.rounds) << "\n";
    out << "# ldet: " << (config.ldet ? std::to_string(*config.ldet) : "all") << "\n";
    out << "# lambda_r_frac: " << (config.lambda_r_frac ? fmt(*config.lambda_r_frac) : "none") << "\n";
    out << "# kappa: " << (config.kappa ? fmt(*config.kappa) : "default") << "\n";
    out << "# reduce_samples: " << fmt(config.reduce_samples) << "\n";
    out << "# seed: " << config.seed << "\n";
    out << "# repeats: " << config.repeats << "\n";
    out << "# workers: " << config.workers << "\n";
    out << "# jobs: " << config.jobs << "\n";
    out << "# timing: " << (config.timing ? "on" : "off") << "\n";
}

void write_split(std::ostream &out, const HamiltonianSplit &split) {
    out << "# n: " << split.num_qubits << "\n";
    out << "# terms: " << split.total_terms() << " l_det: " << split.l_det() << "\n";
    out << "# lambda: " << fmt(split.lambda) << " lambda_r: " << fmt(split.lambda_r)
        << " offset: " << fmt(split.offset) << "\n";
}

std::size_t samples_for(const RunConfig &config, const HamiltonianSplit &split, double delta, int max_round) {
    if (split.randomized.empty()) {
        return 0;
    }
    if (delta == 0) {
        return 1;
    }
    return sample_count(config.kappa, split.lambda_r, delta, max_round, config.reduce_samples);
}

void cmd_simulate(const RunConfig &config, std::ostream &out) {
    Problem p = load_problem(config);
    check_common(config, p.hamiltonian.num_qubits());
    std::string state_desc;
    const std::vector<Amplitude> psi = load_state(config, p.hamiltonian, state_desc);
    const HamiltonianSplit exec = p.split.for_execution();
    const SignalOptions opts = signal_options(config);

    write_header(out, config, p.hamiltonian_sha1);
    write_split(out, exec);
    out << "# state: " << state_desc << "\n";
    out << "m,delta,re_z,im_z,abs_z,r,repeats,rotations,exchanges,wall_ms\n";
    const StreamRng base(config.seed);
    for (std::size_t i = 0; i < config.deltas.size(); ++i) {
        const double delta = config.deltas[i];
        const std::size_t r = samples_for(config, exec, delta, config.rounds);
        const StreamRng rng = base.derive(i);
        for (int m = 0; m <= config.rounds; ++m) {
            const SignalRecord rec = signal(exec, psi, delta, m, r, rng.derive(static_cast<std::uint64_t>(m)), opts);
            out << rec.m << "," << fmt(rec.delta) << "," << fmt(rec.z.real()) << "," << fmt(rec.z.imag()) << ","
                << fmt(std::abs(rec.z)) << "," << rec.r << "," << rec.repeats << "," << rec.rotations << ","
                << rec.exchanges << "," << fmt_fixed(config.timing ? rec.wall_ms : 0.0, 3) << "\n";
        }
    }
}

void cmd_rpe(const RunConfig &config, std::ostream &out, std::ostream &err) {
    Problem p = load_problem(config);
    const int n = p.hamiltonian.num_qubits();
    check_common(config, n);
    if (n > oracle::kMaxHamiltonianQubits) {
        throw ConfigError("rpe needs an exact reference energy; " + std::to_string(n) + " qubits exceeds the " +
                          std::to_string(oracle::kMaxHamiltonianQubits) + "-qubit oracle limit");
    }
    for (double d : config.deltas) {
        if (!(d > 0)) {
            throw ConfigError("rpe needs positive --delta values");
        }
    }
    std::string state_desc;
    const std::vector<Amplitude> psi = load_state(config, p.hamiltonian, state_desc);
    const double reference = oracle::ground_state(p.hamiltonian).energy;
    const HamiltonianSplit exec = p.split.for_execution();

    ScanOptions opts;
    opts.max_round = config.rounds;
    opts.max_round_cap = config.rounds_cap.value_or(config.rounds);
    opts.kappa = config.kappa;
    opts.reduction = config.reduce_samples;
    opts.seed = config.seed;
    opts.jobs = config.jobs;
    opts.signal = signal_options(config);
    const TrotterScan scan = trotter_error_scan(exec, psi, reference, config.deltas, opts);
    const double bound = cgs_bound_partial(p.split);

    write_header(out, config, p.hamiltonian_sha1);
    write_split(out, exec);
    out << "# state: " << state_desc << "\n";
    out << "# reference_energy: " << fmt(reference) << "\n";
    out << "delta,eps_trot,energy,max_round,r,resolution,converged,resolved\n";
    for (const DeltaScan &d : scan.deltas) {
        out << fmt(d.delta) << "," << fmt(d.eps) << "," << fmt(d.estimate.energy) << "," << d.max_round << ","
            << d.r << "," << fmt(d.estimate.resolution) << "," << (d.converged ? 1 : 0) << ","
            << (d.resolved ? 1 : 0) << "\n";
    }
    out << "# fit\n";
    out << "c_gs,a,residual,c_gs_bound,c_gs_le_bound\n";
    if (scan.fit) {
        out << fmt(scan.fit->c_gs) << "," << fmt(scan.fit->a) << "," << fmt(scan.fit->residual) << "," << fmt(bound)
            << "," << (scan.fit->c_gs <= bound ? "true" : "false") << "\n";
    } else {
        out << "nan,nan,nan," << fmt(bound) << ",na\n";
        out << "# " << scan.diagnostic << "\n";
        err << "prsim rpe: " << scan.diagnostic << "\n";
    }
}

void cmd_bound(const RunConfig &config, std::ostream &out) {
    Problem p = load_problem(config);
    write_header(out, config, p.hamiltonian_sha1);
    out << "n,L,L_det,lambda,lambda_R,cgs_bound\n";
    out << p.split.num_qubits << "," << p.split.total_terms() << "," << p.split.l_det() << "," << fmt(p.split.lambda)
        << "," << fmt(p.split.lambda_r) << "," << fmt(cgs_bound_partial(p.split)) << "\n";
}

void cmd_bench(const RunConfig &config, std::ostream &out) {
    if (config.qubits < 1 || config.qubits > 30) {
        throw ConfigError("bench needs --qubits in [1, 30]");
    }
    if (config.workers < 0 || config.workers > config.qubits) {
        throw ConfigError("--workers must lie in [0, --qubits]");
    }
    if (config.bench_lengths.empty()) {
        throw ConfigError("--bench-L needs at least one length");
    }
    for (int len : config.bench_lengths) {
        if (len < 1) {
            throw ConfigError("--bench-L values must be positive");
        }
    }
    if (config.bench_repeats < 1) {
        throw ConfigError("--bench-repeats must be at least 1");
    }
    const ExecutionMode mode = config.workers > 0 ? ExecutionMode::kThreaded : ExecutionMode::kSequential;
    const std::vector<BenchRow> rows =
        run_bench(config.qubits, config.workers, config.bench_lengths, config.bench_repeats, config.seed, mode);
    write_header(out, config, "");
    out << "# qubits: " << config.qubits << " bench_repeats: " << config.bench_repeats << "\n";
    out << "n,m,L,grouped,ms_per_rotation,exchanges\n";
    for (const BenchRow &row : rows) {
        out << row.n << "," << row.m << "," << row.length << "," << (row.grouped ? 1 : 0) << ","
            << fmt_fixed(config.timing ? row.ms_per_rotation : 0.0, 6) << "," << row.exchanges << "\n";
    }
}

std::vector<double> parse_double_list(const std::vector<std::string> &items, const char *flag) {
    std::vector<double> out;
    for (const std::string &item : items) {
        std::stringstream ss(item);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            char *end = nullptr;
            const double v = std::strtod(piece.c_str(), &end);
            if (piece.empty() || end != piece.c_str() + piece.size()) {
                throw ConfigError(std::string(flag) + ": cannot parse '" + piece + "'");
            }
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

std::string git_blob_sha1(std::string_view content) {
    std::string blob = "blob " + std::to_string(content.size());
    blob.push_back('\0');
    blob.append(content);
    unsigned char digest[SHA_DIGEST_LENGTH];
    SHA1(reinterpret_cast<const unsigned char *>(blob.data()), blob.size(), digest);
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned char c : digest) {
        out.push_back(hex[c >> 4]);
        out.push_back(hex[c & 15]);
    }
    return out;
}

std::vector<BenchRow> run_bench(int n, int m, const std::vector<int> &lengths, int repeats, std::uint64_t seed,
                                ExecutionMode mode) {
    std::mt19937_64 engine(seed);
    auto random_word = [&](int qubits) {
        std::string w;
        for (int k = 0; k < qubits; ++k) {
            w.push_back("IXYZ"[engine() & 3]);
        }
        return w;
    };
    FabricOptions opts;
    opts.mode = mode;
    std::vector<BenchRow> rows;
    for (int len : lengths) {
        std::string suffix_word = random_word(m);
        if (m > 0 && (suffix_word[0] == 'I' || suffix_word[0] == 'Z')) {
            suffix_word[0] = 'X';
        }
        const PauliString suffix = m > 0 ? PauliString::from_word(suffix_word) : PauliString(0);
        std::vector<Rotation> stream;
        for (int l = 0; l < len; ++l) {
            const PauliString lower = n - m > 0 ? PauliString::from_word(random_word(n - m)) : PauliString(0);
            stream.push_back({PauliString::concat(lower, suffix), StreamRng::uniform(engine) * 2 - 1});
        }
        for (const Grouping grouping : {Grouping::kGrouped, Grouping::kUngrouped}) {
            Fabric fabric = Fabric::create(n, m, std::uint64_t{0}, opts);
            fabric.randomize(seed);
            fabric.apply_stream(stream, grouping);  // warm-up
            fabric.reset_counters();
            const auto start = std::chrono::steady_clock::now();
            for (int rep = 0; rep < repeats; ++rep) {
                fabric.apply_stream(stream, grouping);
            }
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            BenchRow row;
            row.n = n;
            row.m = m;
            row.length = len;
            row.grouped = grouping == Grouping::kGrouped;
            row.ms_per_rotation = ms / (static_cast<double>(repeats) * len);
            row.exchanges = fabric.counters().exchanges / static_cast<std::uint64_t>(repeats);
            rows.push_back(row);
        }
    }
    return rows;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Partially randomized Hamiltonian simulation with grouped Pauli rotations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig config;
    std::vector<std::string> delta_items;

    auto add_problem = [&](CLI::App *sub) {
        sub->add_option("--hamiltonian", config.hamiltonian_path, "Hamiltonian term file");
        sub->add_option("--ldet", config.ldet, "Number of deterministic terms");
        sub->add_option("--lambda-r-frac", config.lambda_r_frac, "Target lambda_R / lambda for the split");
    };
    auto add_run = [&](CLI::App *sub) {
        add_problem(sub);
        sub->add_option("--state", config.state_path, "Initial state file");
        sub->add_option("--delta", delta_items, "Step size; repeatable or comma separated");
        sub->add_option("--rounds", config.rounds, "Maximum RPE round M");
        sub->add_option("--kappa", config.kappa, "Sample-count parameter (default delta / (0.2 pi))");
        sub->add_option("--reduce-samples", config.reduce_samples, "Sample reduction factor in (0, 1]");
        sub->add_option("--seed", config.seed, "Random seed");
        sub->add_option("--repeats", config.repeats, "Circuit runs averaged per randomized signal");
        sub->add_option("--workers", config.workers, "Partition qubits m (2^m workers)");
        sub->add_option("--jobs", config.jobs, "Concurrent (delta, round) cells");
        sub->add_flag("!--no-timing", config.timing, "Write zero wall times for reproducible output");
    };

    CLI::App *simulate = app.add_subcommand("simulate", "Write Z_m signals for each step size and round");
    add_run(simulate);
    CLI::App *rpe = app.add_subcommand("rpe", "Estimate Trotter errors by RPE and fit C_gs delta^a");
    add_run(rpe);
    rpe->add_option("--rounds-cap", config.rounds_cap, "Raise M up to this value until estimates converge");
    CLI::App *bound = app.add_subcommand("bound", "Print the C_gs upper bound for a split");
    add_problem(bound);
    CLI::App *bench = app.add_subcommand("bench", "Time grouped versus ungrouped rotation groups");
    bench->add_option("--qubits", config.qubits, "Total qubits n")->required();
    bench->add_option("--workers", config.workers, "Partition qubits m (2^m workers)");
    bench->add_option("--bench-L", config.bench_lengths, "Group lengths")->delimiter(',');
    bench->add_option("--bench-repeats", config.bench_repeats, "Applications averaged per row");
    bench->add_option("--seed", config.seed, "Random seed");
    bench->add_flag("!--no-timing", config.timing, "Write zero timings");
    for (CLI::App *sub : {simulate, rpe, bound, bench}) {
        sub->add_option("--out", config.out_path, "Output file (default stdout)");
    }

    std::vector<std::string> argv_storage{"prsim"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (std::string &s : argv_storage) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        config.subcommand = app.get_subcommands().front()->get_name();
        if (!delta_items.empty()) {
            config.deltas = parse_double_list(delta_items, "--delta");
        }
        std::ofstream file;
        std::ostringstream buffer;
        if (config.subcommand == "simulate") {
            cmd_simulate(config, buffer);
        } else if (config.subcommand == "rpe") {
            cmd_rpe(config, buffer, err);
        } else if (config.subcommand == "bound") {
            cmd_bound(config, buffer);
        } else {
            cmd_bench(config, buffer);
        }
        if (config.out_path.empty()) {
            out << buffer.str();
        } else {
            file.open(config.out_path, std::ios::binary);
            if (!file) {
                throw ConfigError("cannot write output file '" + config.out_path + "'");
            }
            file << buffer.str();
        }
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "prsim: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InputError &e) {
        err << "prsim: input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericalGuardError &e) {
        err << "prsim: numerical guard: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "prsim: error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace prsim::cli
