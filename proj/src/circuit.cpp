// Copyright 2026 The ddbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ddbench/circuit.hpp"

#include <array>
#include <cmath>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ddbench {

namespace {

constexpr std::array<std::string_view, 13> kKindNames = {
    "ID", "X", "SX", "RZ", "H", "RX", "Y", "CX", "CZ", "ECR", "RZZ", "DELAY", "MEASURE"};

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

bool is_two_qubit(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::ECR:
        case GateKind::RZZ:
            return true;
        default:
            return false;
    }
}

bool has_angle(GateKind kind) {
    return kind == GateKind::RZ || kind == GateKind::RX || kind == GateKind::RZZ;
}

std::string_view kind_name(GateKind kind) {
    return kKindNames[static_cast<size_t>(kind)];
}

GateKind kind_from_name(std::string_view name) {
    for (size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<GateKind>(i);
    }
    throw std::invalid_argument("unknown gate kind: " + std::string(name));
}

void Gate::validate() const {
    const size_t arity = kind == GateKind::MEASURE ? 0 : (is_two_qubit(kind) ? 2 : 1);
    if (qubits.size() != arity) {
        throw std::invalid_argument(std::string("gate ") + std::string(kind_name(kind)) +
                                    ": expected " + std::to_string(arity) + " operands, got " +
                                    std::to_string(qubits.size()));
    }
    if (arity == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument(std::string("gate ") + std::string(kind_name(kind)) +
                                    ": duplicate qubit operand " + std::to_string(qubits[0]));
    }
    if (has_angle(kind) && !std::isfinite(angle)) {
        throw std::invalid_argument("gate angle must be finite");
    }
    if (kind == GateKind::DELAY && delay_dt < 0) {
        throw std::invalid_argument("DELAY span must be >= 0 dt");
    }
}

Circuit& Circuit::push(Gate g) {
    g.validate();
    for (uint32_t q : g.qubits) {
        if (q >= num_qubits) {
            throw std::invalid_argument("qubit index " + std::to_string(q) +
                                        " out of range for " + std::to_string(num_qubits) +
                                        "-qubit circuit");
        }
    }
    gates.push_back(std::move(g));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    for (const Gate& g : other.gates) push(g);
    return *this;
}

bool Circuit::has_measure() const {
    for (const Gate& g : gates) {
        if (g.kind == GateKind::MEASURE) return true;
    }
    return false;
}

void Circuit::validate() const {
    bool seen_measure = false;
    for (const Gate& g : gates) {
        g.validate();
        for (uint32_t q : g.qubits) {
            if (q >= num_qubits) {
                throw std::invalid_argument("qubit index out of range in circuit '" + label + "'");
            }
        }
        if (seen_measure && g.kind != GateKind::MEASURE) {
            throw std::invalid_argument("MEASURE must form the final layer in circuit '" + label + "'");
        }
        if (g.kind == GateKind::MEASURE) seen_measure = true;
    }
}

std::string to_text(const Circuit& circuit) {
    std::string out;
    for (const Gate& g : circuit.gates) {
        out += kind_name(g.kind);
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            out += i == 0 ? " " : ",";
            out += std::to_string(g.qubits[i]);
        }
        if (has_angle(g.kind)) {
            out += "@";
            out += format_double(g.angle);
        }
        if (g.kind == GateKind::DELAY) {
            out += "#";
            out += std::to_string(g.delay_dt);
        }
        out += "\n";
    }
    return out;
}

Circuit circuit_from_text(std::string_view text, uint32_t num_qubits, std::string label) {
    Circuit circuit(num_qubits, std::move(label));
    size_t line_no = 0;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') continue;

        try {
            const size_t sp = line.find(' ');
            const GateKind kind = kind_from_name(line.substr(0, sp));
            Gate g;
            g.kind = kind;
            if (sp != std::string_view::npos) {
                std::string_view rest = line.substr(sp + 1);
                std::string_view operands = rest;
                const size_t at = rest.find('@');
                const size_t hash = rest.find('#');
                const size_t cut = std::min(at, hash);
                if (cut != std::string_view::npos) operands = rest.substr(0, cut);
                size_t start = 0;
                while (start < operands.size()) {
                    size_t comma = operands.find(',', start);
                    if (comma == std::string_view::npos) comma = operands.size();
                    std::string_view tok = operands.substr(start, comma - start);
                    uint32_t q = 0;
                    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), q);
                    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
                        throw std::invalid_argument("bad qubit operand '" + std::string(tok) + "'");
                    }
                    g.qubits.push_back(q);
                    start = comma + 1;
                }
                if (at != std::string_view::npos) {
                    const size_t end = hash != std::string_view::npos && hash > at ? hash : rest.size();
                    g.angle = std::stod(std::string(rest.substr(at + 1, end - at - 1)));
                }
                if (hash != std::string_view::npos) {
                    g.delay_dt = std::stoll(std::string(rest.substr(hash + 1)));
                }
            }
            circuit.push(std::move(g));
        } catch (const std::exception& e) {
            throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return circuit;
}

}  // namespace ddbench
