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

#include "ddbench/decompose.hpp"

#include <cmath>
#include <stdexcept>

namespace ddbench {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kAngleEps = 1e-12;

// Folds an angle into (-pi, pi]; changes RZ only by a global phase.
double fold_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

bool is_zero_angle(double a) { return std::abs(fold_angle(a)) < kAngleEps; }

// ZYZ Euler angles of a 2x2 unitary: u ~ RZ(alpha) RY(theta) RZ(beta) up to
// global phase, theta in [0, pi]. Gimbal-locked inputs (theta near 0 or pi)
// put the whole z-rotation into alpha.
struct Zyz {
    double alpha, theta, beta;
};

Zyz zyz_angles(const CMatrix& u) {
    if (u.dim != 2) throw std::invalid_argument("zyz_angles: expected a 2x2 matrix");
    const cplx det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
    const double phi = 0.5 * std::arg(det);
    const cplx inv_phase = std::exp(cplx(0.0, -phi));
    const cplx v00 = u.at(0, 0) * inv_phase;
    const cplx v10 = u.at(1, 0) * inv_phase;
    const cplx v11 = u.at(1, 1) * inv_phase;

    Zyz out{};
    out.theta = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
    const double c = std::cos(out.theta / 2.0);
    const double s = std::sin(out.theta / 2.0);
    if (s < 1e-12) {
        out.alpha = 2.0 * std::arg(v11);
        out.beta = 0.0;
    } else if (c < 1e-12) {
        out.alpha = 2.0 * std::arg(v10);
        out.beta = 0.0;
    } else {
        const double sum = 2.0 * std::arg(v11);   // alpha + beta
        const double diff = 2.0 * std::arg(v10);  // alpha - beta
        out.alpha = 0.5 * (sum + diff);
        out.beta = 0.5 * (sum - diff);
    }
    return out;
}

// Applies the gate to `out` at chain positions, recursing through non-native
// kinds until only the device basis remains.
void lower_gate(const Gate& g, const DeviceModel& dev, DecompositionStyle style, Circuit& out);

void lower_all(const Circuit& c, const DeviceModel& dev, DecompositionStyle style, Circuit& out) {
    for (const Gate& g : c.gates) lower_gate(g, dev, style, out);
}

void lower_gate(const Gate& g, const DeviceModel& dev, DecompositionStyle style, Circuit& out) {
    if (is_two_qubit(g.kind) && !dev.adjacent(g.qubits[0], g.qubits[1])) {
        throw std::invalid_argument("lower_to_basis: gate on non-adjacent chain pair (" +
                                    std::to_string(g.qubits[0]) + "," + std::to_string(g.qubits[1]) +
                                    "); route first");
    }
    switch (g.kind) {
        case GateKind::ID:
        case GateKind::X:
        case GateKind::SX:
        case GateKind::DELAY:
        case GateKind::MEASURE:
            out.push(g);
            return;
        case GateKind::RZ:
            out.push(Gate::rz(g.qubits[0], g.angle));
            return;
        case GateKind::H:
            out.push(Gate::rz(g.qubits[0], kPi / 2.0));
            out.push(Gate::sx(g.qubits[0]));
            out.push(Gate::rz(g.qubits[0], kPi / 2.0));
            return;
        case GateKind::Y:
            out.push(Gate::rz(g.qubits[0], -kPi / 2.0));
            out.push(Gate::x(g.qubits[0]));
            out.push(Gate::rz(g.qubits[0], kPi / 2.0));
            return;
        case GateKind::RX:
            for (Gate& e : zsx_synthesis(gate_matrix_1q(GateKind::RX, g.angle), g.qubits[0])) {
                out.push(std::move(e));
            }
            return;
        case GateKind::RZZ: {
            const Circuit expansion = style == DecompositionStyle::CX_IMPL
                                          ? rzz_as_cx(g.angle, g.qubits[0], g.qubits[1])
                                          : rzz_as_cz(g.angle, g.qubits[0], g.qubits[1]);
            lower_all(expansion, dev, style, out);
            return;
        }
        case GateKind::CZ: {
            const uint32_t a = g.qubits[0], b = g.qubits[1];
            lower_gate(Gate::h(b), dev, style, out);
            lower_gate(Gate::cx(a, b), dev, style, out);
            lower_gate(Gate::h(b), dev, style, out);
            return;
        }
        case GateKind::CX: {
            const uint32_t c = g.qubits[0], t = g.qubits[1];
            if (dev.native_2q == Native2Q::CX) {
                if (dev.supports_direction(c, t)) {
                    out.push(g);
                    return;
                }
                if (dev.supports_direction(t, c)) {
                    lower_all(reverse_cx(c, t), dev, style, out);
                    return;
                }
            } else {
                if (dev.supports_direction(c, t)) {
                    lower_all(cx_as_ecr(c, t), dev, style, out);
                    return;
                }
                if (dev.supports_direction(t, c)) {
                    lower_all(reverse_cx(c, t), dev, style, out);
                    return;
                }
            }
            throw std::invalid_argument("lower_to_basis: no supported direction for pair (" +
                                        std::to_string(c) + "," + std::to_string(t) + ")");
        }
        case GateKind::ECR: {
            const uint32_t c = g.qubits[0], t = g.qubits[1];
            if (dev.native_2q == Native2Q::ECR) {
                if (dev.supports_direction(c, t)) {
                    out.push(g);
                    return;
                }
                throw std::invalid_argument("lower_to_basis: unsupported ECR direction (" +
                                            std::to_string(c) + "," + std::to_string(t) + ")");
            }
            // ECR = (X S (x) RX(pi/2)) CX up to phase, so on CX hardware it
            // is one CX plus corrections after it.
            lower_gate(Gate::cx(c, t), dev, style, out);
            out.push(Gate::rz(c, kPi / 2.0));
            out.push(Gate::x(c));
            out.push(Gate::sx(t));
            return;
        }
    }
    throw std::invalid_argument("lower_to_basis: unhandled gate kind");
}

bool is_self_inverse(GateKind k) {
    return k == GateKind::X || k == GateKind::CX || k == GateKind::CZ || k == GateKind::ECR;
}

bool touches(const Gate& g, uint32_t q, uint32_t num_qubits) {
    if (g.kind == GateKind::MEASURE) return true;
    (void)num_qubits;
    for (uint32_t gq : g.qubits) {
        if (gq == q) return true;
    }
    return false;
}

// One OPT1 sweep; returns true if anything changed.
bool opt1_sweep(Circuit& c) {
    std::vector<Gate> out;
    out.reserve(c.gates.size());
    bool changed = false;

    auto last_touching = [&](const Gate& g) -> int {
        for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
            for (uint32_t q : g.qubits) {
                if (touches(out[static_cast<size_t>(i)], q, c.num_qubits)) return i;
            }
        }
        return -1;
    };

    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::ID) {
            changed = true;
            continue;
        }
        if (g.kind == GateKind::RZ) {
            const int prev = last_touching(g);
            if (prev >= 0 && out[static_cast<size_t>(prev)].kind == GateKind::RZ &&
                out[static_cast<size_t>(prev)].qubits == g.qubits) {
                const double merged = fold_angle(out[static_cast<size_t>(prev)].angle + g.angle);
                out.erase(out.begin() + prev);
                changed = true;
                if (!is_zero_angle(merged)) out.push_back(Gate::rz(g.qubits[0], merged));
                continue;
            }
            const double folded = fold_angle(g.angle);
            if (is_zero_angle(folded)) {
                changed = true;
                continue;
            }
            if (folded != g.angle) changed = true;
            out.push_back(Gate::rz(g.qubits[0], folded));
            continue;
        }
        if (is_self_inverse(g.kind)) {
            const int prev = last_touching(g);
            if (prev >= 0 && out[static_cast<size_t>(prev)] == g) {
                out.erase(out.begin() + prev);
                changed = true;
                continue;
            }
        }
        out.push_back(g);
    }
    c.gates = std::move(out);
    return changed;
}

// Moves each RZ sitting directly before a CX on that CX's control line to
// just after the CX (they commute); ties break toward the circuit end.
bool push_rz_through_cx(Circuit& c) {
    bool changed = false;
    for (size_t i = 0; i < c.gates.size(); ++i) {
        if (c.gates[i].kind != GateKind::RZ) continue;
        const uint32_t q = c.gates[i].qubits[0];
        size_t j = i + 1;
        while (j < c.gates.size() && !touches(c.gates[j], q, c.num_qubits)) ++j;
        if (j >= c.gates.size()) continue;
        const Gate& blocker = c.gates[j];
        if (blocker.kind != GateKind::CX || blocker.qubits[0] != q) continue;
        const Gate rz = c.gates[i];
        c.gates.erase(c.gates.begin() + static_cast<long>(i));
        c.gates.insert(c.gates.begin() + static_cast<long>(j), rz);  // j shifted left by the erase
        changed = true;
    }
    return changed;
}

bool is_1q_basis(GateKind k) {
    return k == GateKind::RZ || k == GateKind::SX || k == GateKind::X || k == GateKind::ID ||
           k == GateKind::H || k == GateKind::RX || k == GateKind::Y;
}

// Replaces maximal single-qubit runs with their canonical form when that is
// strictly shorter.
bool resynthesize_runs(Circuit& c) {
    bool changed = false;
    std::vector<Gate> out;
    out.reserve(c.gates.size());
    size_t i = 0;
    while (i < c.gates.size()) {
        const Gate& g = c.gates[i];
        if (!is_1q_basis(g.kind)) {
            out.push_back(g);
            ++i;
            continue;
        }
        const uint32_t q = g.qubits[0];
        std::vector<Gate> run;
        size_t j = i;
        // The run may only absorb later 1q gates on q that no intervening
        // gate on q separates; gates on other qubits are skipped in place.
        std::vector<Gate> skipped;
        while (j < c.gates.size()) {
            const Gate& h = c.gates[j];
            if (touches(h, q, c.num_qubits)) {
                if (!is_1q_basis(h.kind)) break;
                run.push_back(h);
            } else {
                skipped.push_back(h);
            }
            ++j;
        }
        if (run.size() > 1) {
            CMatrix m = CMatrix::identity(2);
            for (const Gate& r : run) m = matmul(gate_matrix_1q(r.kind, r.angle), m);
            std::vector<Gate> canon = zsx_synthesis(m, q);
            if (canon.size() < run.size()) {
                changed = true;
                run = std::move(canon);
            }
        }
        for (Gate& r : run) out.push_back(std::move(r));
        for (Gate& s : skipped) out.push_back(std::move(s));
        i = j;
    }
    c.gates = std::move(out);
    return changed;
}

}  // namespace

std::string_view style_name(DecompositionStyle s) {
    return s == DecompositionStyle::CX_IMPL ? "CX_IMPL" : "CZ_IMPL";
}

std::string_view preset_name(OptPreset p) {
    return p == OptPreset::OPT1 ? "OPT1" : "OPT3";
}

DecompositionStyle style_from_name(std::string_view name) {
    if (name == "CX_IMPL") return DecompositionStyle::CX_IMPL;
    if (name == "CZ_IMPL") return DecompositionStyle::CZ_IMPL;
    throw std::invalid_argument("unknown decomposition style: " + std::string(name));
}

OptPreset preset_from_name(std::string_view name) {
    if (name == "OPT1") return OptPreset::OPT1;
    if (name == "OPT3") return OptPreset::OPT3;
    throw std::invalid_argument("unknown optimization preset: " + std::string(name));
}

Circuit rzz_as_cx(double theta, uint32_t q0, uint32_t q1) {
    Circuit c(std::max(q0, q1) + 1);
    c.push(Gate::cx(q0, q1));
    c.push(Gate::rz(q1, theta));
    c.push(Gate::cx(q0, q1));
    return c;
}

Circuit rzz_as_cz(double theta, uint32_t q0, uint32_t q1) {
    Circuit c(std::max(q0, q1) + 1);
    c.push(Gate::h(q1));
    c.push(Gate::cz(q0, q1));
    c.push(Gate::rx(q1, theta));
    c.push(Gate::cz(q0, q1));
    c.push(Gate::h(q1));
    return c;
}

Circuit cx_as_ecr(uint32_t control, uint32_t target) {
    // CX = (Sdg X (x) RX(-pi/2)) ECR up to phase, with RX(-pi/2) ~ SX, X.
    Circuit c(std::max(control, target) + 1);
    c.push(Gate::ecr(control, target));
    c.push(Gate::x(control));
    c.push(Gate::rz(control, -kPi / 2.0));
    c.push(Gate::sx(target));
    c.push(Gate::x(target));
    return c;
}

Circuit reverse_cx(uint32_t control, uint32_t target) {
    Circuit c(std::max(control, target) + 1);
    c.push(Gate::h(control));
    c.push(Gate::h(target));
    c.push(Gate::cx(target, control));
    c.push(Gate::h(control));
    c.push(Gate::h(target));
    return c;
}

std::vector<Gate> zsx_synthesis(const CMatrix& u, uint32_t qubit) {
    const Zyz e = zyz_angles(u);
    std::vector<Gate> out;
    if (std::abs(e.theta) < 1e-12) {
        const double a = fold_angle(e.alpha + e.beta);
        if (!is_zero_angle(a)) out.push_back(Gate::rz(qubit, a));
        return out;
    }
    // u ~ RZ(alpha + pi) SX RZ(theta + pi) SX RZ(beta); emitted in circuit
    // order with zero angles elided.
    const double first = fold_angle(e.beta);
    const double mid = fold_angle(e.theta + kPi);
    const double last = fold_angle(e.alpha + kPi);
    if (!is_zero_angle(first)) out.push_back(Gate::rz(qubit, first));
    out.push_back(Gate::sx(qubit));
    if (!is_zero_angle(mid)) out.push_back(Gate::rz(qubit, mid));
    out.push_back(Gate::sx(qubit));
    if (!is_zero_angle(last)) out.push_back(Gate::rz(qubit, last));
    return out;
}

Circuit lower_to_basis(const Circuit& circuit, const DeviceModel& device, DecompositionStyle style) {
    circuit.validate();
    if (circuit.num_qubits > device.chain_length) {
        throw std::invalid_argument("lower_to_basis: circuit needs " +
                                    std::to_string(circuit.num_qubits) + " qubits, chain has " +
                                    std::to_string(device.chain_length));
    }
    Circuit out(circuit.num_qubits, circuit.label);
    lower_all(circuit, device, style, out);
    return out;
}

Circuit optimize(const Circuit& circuit, OptPreset preset) {
    Circuit cur = circuit;
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        while (opt1_sweep(cur)) changed = true;
        if (preset == OptPreset::OPT3) {
            changed |= push_rz_through_cx(cur);
            changed |= resynthesize_runs(cur);
        }
        if (!changed) break;
    }
    return cur;
}

}  // namespace ddbench
