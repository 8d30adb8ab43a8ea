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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ddbench {

/// Device-agnostic gate vocabulary. H, RX, Y and RZZ are IR-level only and
/// must be lowered before scheduling; DELAY/MEASURE are timing/terminal
/// markers.
enum class GateKind {
    ID,
    X,
    SX,
    RZ,
    H,
    RX,
    Y,
    CX,
    CZ,
    ECR,
    RZZ,
    DELAY,
    MEASURE,
};

bool is_two_qubit(GateKind kind);
bool has_angle(GateKind kind);
std::string_view kind_name(GateKind kind);
GateKind kind_from_name(std::string_view name);

/// One instruction. Qubit order is significant: control first for directed
/// two-qubit gates. MEASURE carries no operands and addresses every qubit.
struct Gate {
    GateKind kind = GateKind::ID;
    std::vector<uint32_t> qubits;
    double angle = 0.0;     // radians; RZ/RX/RZZ only
    int64_t delay_dt = 0;   // DELAY only

    static Gate id(uint32_t q) { return {GateKind::ID, {q}, 0.0, 0}; }
    static Gate x(uint32_t q) { return {GateKind::X, {q}, 0.0, 0}; }
    static Gate sx(uint32_t q) { return {GateKind::SX, {q}, 0.0, 0}; }
    static Gate rz(uint32_t q, double angle) { return {GateKind::RZ, {q}, angle, 0}; }
    static Gate h(uint32_t q) { return {GateKind::H, {q}, 0.0, 0}; }
    static Gate rx(uint32_t q, double angle) { return {GateKind::RX, {q}, angle, 0}; }
    static Gate y(uint32_t q) { return {GateKind::Y, {q}, 0.0, 0}; }
    static Gate cx(uint32_t control, uint32_t target) { return {GateKind::CX, {control, target}, 0.0, 0}; }
    static Gate cz(uint32_t a, uint32_t b) { return {GateKind::CZ, {a, b}, 0.0, 0}; }
    static Gate ecr(uint32_t control, uint32_t target) { return {GateKind::ECR, {control, target}, 0.0, 0}; }
    static Gate rzz(uint32_t a, uint32_t b, double angle) { return {GateKind::RZZ, {a, b}, angle, 0}; }
    static Gate delay(uint32_t q, int64_t span_dt) { return {GateKind::DELAY, {q}, 0.0, span_dt}; }
    static Gate measure() { return {GateKind::MEASURE, {}, 0.0, 0}; }

    /// Arity/index/angle sanity; throws std::invalid_argument on violation.
    void validate() const;

    bool operator==(const Gate& other) const = default;
};

struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<Gate> gates;
    std::string label;

    Circuit() = default;
    explicit Circuit(uint32_t n, std::string lbl = "") : num_qubits(n), label(std::move(lbl)) {}

    Circuit& push(Gate g);
    Circuit& append(const Circuit& other);

    bool has_measure() const;
    /// All gate invariants plus: indices < num_qubits, MEASURE only as a
    /// final layer. Throws std::invalid_argument.
    void validate() const;
};

/// Line-oriented text form, one gate per line:
///   KIND q0[,q1][@angle_radians][#delay_dt]
/// MEASURE takes no operands. '#'-prefixed lines and blank lines are skipped
/// on input.
std::string to_text(const Circuit& circuit);
Circuit circuit_from_text(std::string_view text, uint32_t num_qubits, std::string label = "");

}  // namespace ddbench
