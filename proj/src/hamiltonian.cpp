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

#include "prsim/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace prsim {

double one_norm(std::span<const Term> terms) {
    double total = 0;
    for (const Term &t : terms) {
        total += std::abs(t.coefficient);
    }
    return total;
}

Hamiltonian::Hamiltonian(int num_qubits, std::span<const Term> terms, double offset)
    : n_(num_qubits), offset_(offset) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("Hamiltonian: qubit count out of range");
    }
    std::unordered_map<PauliString, std::size_t, PauliStringHash> index;
    std::vector<Term> merged;
    for (const Term &t : terms) {
        if (t.pauli.num_qubits() != num_qubits) {
            throw std::invalid_argument("Hamiltonian: term " + t.pauli.word() + " has wrong qubit count");
        }
        if (!std::isfinite(t.coefficient)) {
            throw std::invalid_argument("Hamiltonian: non-finite coefficient for " + t.pauli.word());
        }
        if (t.pauli.is_identity()) {
            offset_ += t.coefficient;
            continue;
        }
        auto [it, inserted] = index.emplace(t.pauli, merged.size());
        if (inserted) {
            merged.push_back(t);
        } else {
            merged[it->second].coefficient += t.coefficient;
        }
    }
    for (Term &t : merged) {
        if (t.coefficient != 0) {
            terms_.push_back(std::move(t));
        }
    }
}

Hamiltonian Hamiltonian::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<Term> terms;
    int width = -1;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string coeff_token;
        std::string word;
        std::string extra;
        if (!(fields >> coeff_token)) {
            continue;
        }
        const std::string where = "hamiltonian line " + std::to_string(line_no);
        if (!(fields >> word) || (fields >> extra)) {
            throw std::invalid_argument(where + ": expected '<coefficient> <pauli word>'");
        }
        char *end = nullptr;
        const double coeff = std::strtod(coeff_token.c_str(), &end);
        if (end != coeff_token.c_str() + coeff_token.size() || !std::isfinite(coeff)) {
            throw std::invalid_argument(where + ": unparsable coefficient '" + coeff_token + "'");
        }
        PauliString p;
        try {
            p = PauliString::from_word(word);
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
        if (width < 0) {
            width = p.num_qubits();
        } else if (p.num_qubits() != width) {
            throw std::invalid_argument(where + ": word length " + std::to_string(p.num_qubits()) +
                                        " differs from " + std::to_string(width));
        }
        terms.push_back({coeff, p});
    }
    if (terms.empty()) {
        throw std::invalid_argument("hamiltonian: no terms");
    }
    return Hamiltonian(width, terms);
}

namespace {

bool lex_less(const Term &a, const Term &b) { return a.pauli.lexicographic_less(b.pauli); }

bool magnitude_order(const Term &a, const Term &b) {
    const double x = std::abs(a.coefficient);
    const double y = std::abs(b.coefficient);
    if (x != y) {
        return x > y;
    }
    return a.pauli.lexicographic_less(b.pauli);
}

HamiltonianSplit split_at(const Hamiltonian &h, std::vector<Term> ranked, std::size_t l_det) {
    HamiltonianSplit split;
    split.num_qubits = h.num_qubits();
    split.offset = h.offset();
    split.deterministic.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(l_det));
    split.randomized.assign(ranked.begin() + static_cast<std::ptrdiff_t>(l_det), ranked.end());
    split.lambda = one_norm(ranked);
    split.lambda_r = one_norm(split.randomized);
    return split;
}

std::vector<Term> ranked_terms(const Hamiltonian &h) {
    std::vector<Term> ranked = h.terms();
    std::stable_sort(ranked.begin(), ranked.end(), magnitude_order);
    return ranked;
}

}  // namespace

Hamiltonian sort_for_execution(const Hamiltonian &h) {
    std::vector<Term> terms = h.terms();
    std::stable_sort(terms.begin(), terms.end(), lex_less);
    return Hamiltonian(h.num_qubits(), terms, h.offset());
}

HamiltonianSplit HamiltonianSplit::for_execution() const {
    HamiltonianSplit out = *this;
    std::stable_sort(out.deterministic.begin(), out.deterministic.end(), lex_less);
    return out;
}

HamiltonianSplit split_deterministic(const Hamiltonian &h, DeterministicCount criterion) {
    if (criterion.count > h.size()) {
        throw std::invalid_argument("split_deterministic: L_det=" + std::to_string(criterion.count) +
                                    " exceeds term count " + std::to_string(h.size()));
    }
    return split_at(h, ranked_terms(h), criterion.count);
}

HamiltonianSplit split_deterministic(const Hamiltonian &h, RandomizedFraction criterion) {
    if (!(criterion.target >= 0 && criterion.target <= 1)) {
        throw std::invalid_argument("split_deterministic: fraction must lie in [0, 1]");
    }
    std::vector<Term> ranked = ranked_terms(h);
    const double lambda = one_norm(ranked);
    std::size_t l_det = 0;
    double lambda_r = lambda;
    // Compare against a suffix sum recomputed per step so that L_det = L gives exactly 0.
    while (l_det < ranked.size() && lambda_r > criterion.target * lambda) {
        ++l_det;
        lambda_r = one_norm(std::span<const Term>(ranked).subspan(l_det));
    }
    return split_at(h, std::move(ranked), l_det);
}

double cost_model(std::size_t l_d, double lambda_r, double epsilon, double delta, double a, double b) {
    if (!(epsilon > 0) || !(delta > 0)) {
        throw std::invalid_argument("cost_model: epsilon and delta must be positive");
    }
    return a * static_cast<double>(l_d) / (epsilon * delta) + b * lambda_r * lambda_r / (epsilon * epsilon);
}

SplitChoice minimize_cost(const Hamiltonian &h, double epsilon, double a, double b,
                          const std::function<double(const HamiltonianSplit &)> &cgs_proxy) {
    if (!(epsilon > 0)) {
        throw std::invalid_argument("minimize_cost: epsilon must be positive");
    }
    std::vector<Term> ranked = ranked_terms(h);
    SplitChoice best;
    best.cost = std::numeric_limits<double>::infinity();
    for (std::size_t l_det = 0; l_det <= ranked.size(); ++l_det) {
        HamiltonianSplit split = split_at(h, ranked, l_det);
        const double cgs = cgs_proxy(split);
        if (!(cgs >= 0)) {
            throw std::invalid_argument("minimize_cost: C_gs proxy returned a negative or NaN value");
        }
        // A vanishing C_gs leaves the step size unconstrained; only the deterministic cost then
        // depends on delta and it goes to zero.
        const double delta = cgs > 0 ? std::sqrt(epsilon / cgs) : std::numeric_limits<double>::infinity();
        const double cost = std::isinf(delta) ? b * split.lambda_r * split.lambda_r / (epsilon * epsilon)
                                              : cost_model(l_det, split.lambda_r, epsilon, delta, a, b);
        if (cost < best.cost) {
            best = {l_det, delta, cost, cgs};
        }
    }
    return best;
}

std::vector<RotationGroup> group_stream(std::span<const Rotation> rotations, int m) {
    std::vector<RotationGroup> groups;
    for (const Rotation &r : rotations) {
        auto [lower, upper] = r.pauli.split_suffix(m);
        if (groups.empty() || !(groups.back().suffix == upper)) {
            groups.push_back(RotationGroup{upper, {}});
        }
        groups.back().members.push_back(Rotation{lower, r.angle});
    }
    return groups;
}

namespace {

bool sets_commute(const std::vector<Term> &a, const std::vector<Term> &b) {
    for (const Term &x : a) {
        for (const Term &y : b) {
            if (!x.pauli.commutes_with(y.pauli)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

double cgs_bound_general(const std::vector<std::vector<Term>> &partition) {
    if (partition.empty()) {
        throw std::invalid_argument("cgs_bound_general: empty partition");
    }
    std::vector<double> norms;
    norms.reserve(partition.size());
    for (const auto &set : partition) {
        norms.push_back(one_norm(set));
    }
    double total = 0;
    for (std::size_t a = 0; a < partition.size(); ++a) {
        double inner = 0;
        for (std::size_t b = 0; b < partition.size(); ++b) {
            if (b != a && !sets_commute(partition[a], partition[b])) {
                inner += norms[b];
            }
        }
        total += norms[a] * inner * inner;
    }
    return 4 * total;
}

double cgs_bound_partial(const HamiltonianSplit &split) {
    const std::vector<Term> &det = split.deterministic;
    double total = 0;
    for (std::size_t l = 0; l < det.size(); ++l) {
        double inner = 0;
        for (std::size_t k = 0; k < det.size(); ++k) {
            if (!det[l].pauli.commutes_with(det[k].pauli)) {
                inner += std::abs(det[k].coefficient);
            }
        }
        total += std::abs(det[l].coefficient) * inner * inner;
    }
    const double lambda_d = split.lambda - split.lambda_r;
    return 4 * total + split.lambda_r * lambda_d * lambda_d + lambda_d * split.lambda_r * split.lambda_r;
}

}  // namespace prsim
