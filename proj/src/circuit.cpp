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

#include "prsim/circuit.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace prsim {

std::string format_rotations(const std::vector<Rotation> &rotations) {
    std::string out;
    char buf[64];
    for (const Rotation &r : rotations) {
        std::snprintf(buf, sizeof(buf), "%.17g ", r.angle);
        out += buf;
        out += r.pauli.word();
        out += '\n';
    }
    return out;
}

std::vector<Rotation> parse_rotations(std::string_view text) {
    std::vector<Rotation> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int width = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        double angle = 0;
        std::string word;
        std::string extra;
        if (!(fields >> angle)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw std::invalid_argument("rotation line " + std::to_string(line_no) + ": bad angle");
        }
        if (!(fields >> word) || (fields >> extra)) {
            throw std::invalid_argument("rotation line " + std::to_string(line_no) + ": expected '<phi> <word>'");
        }
        Rotation r{PauliString::from_word(word), angle};
        if (width >= 0 && r.pauli.num_qubits() != width) {
            throw std::invalid_argument("rotation line " + std::to_string(line_no) + ": ragged word length");
        }
        width = r.pauli.num_qubits();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace prsim
