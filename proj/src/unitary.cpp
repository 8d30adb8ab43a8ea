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

#include "ddbench/unitary.hpp"

#include <cmath>
#include <stdexcept>

namespace ddbench {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

// Applies the 2x2 matrix g to the row index bit `bit` of m (i.e. m <- G m for
// the embedded G).
void apply_1q_rows(CMatrix& m, const CMatrix& g, size_t bit) {
    const size_t dim = m.dim;
    const size_t mask = size_t{1} << bit;
    for (size_t r0 = 0; r0 < dim; ++r0) {
        if (r0 & mask) continue;
        const size_t r1 = r0 | mask;
        cplx* row0 = &m.a[r0 * dim];
        cplx* row1 = &m.a[r1 * dim];
        const cplx g00 = g.at(0, 0), g01 = g.at(0, 1), g10 = g.at(1, 0), g11 = g.at(1, 1);
        for (size_t c = 0; c < dim; ++c) {
            const cplx v0 = row0[c];
            const cplx v1 = row1[c];
            row0[c] = g00 * v0 + g01 * v1;
            row1[c] = g10 * v0 + g11 * v1;
        }
    }
}

// Applies the 4x4 matrix g to row bits (hi, lo) of m, hi being the first
// gate operand.
void apply_2q_rows(CMatrix& m, const CMatrix& g, size_t hi_bit, size_t lo_bit) {
    const size_t dim = m.dim;
    const size_t hm = size_t{1} << hi_bit;
    const size_t lm = size_t{1} << lo_bit;
    for (size_t base = 0; base < dim; ++base) {
        if (base & (hm | lm)) continue;
        const size_t rows[4] = {base, base | lm, base | hm, base | hm | lm};
        for (size_t c = 0; c < dim; ++c) {
            cplx v[4];
            for (int i = 0; i < 4; ++i) v[i] = m.a[rows[i] * dim + c];
            for (int i = 0; i < 4; ++i) {
                cplx acc(0.0, 0.0);
                for (int j = 0; j < 4; ++j) acc += g.at(i, j) * v[j];
                m.a[rows[i] * dim + c] = acc;
            }
        }
    }
}

}  // namespace

CMatrix CMatrix::identity(size_t d) {
    CMatrix m(d);
    for (size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix matmul(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::invalid_argument("matmul: dimension mismatch");
    const size_t d = lhs.dim;
    CMatrix out(d);
    for (size_t r = 0; r < d; ++r) {
        for (size_t k = 0; k < d; ++k) {
            const cplx v = lhs.at(r, k);
            if (v == cplx(0.0, 0.0)) continue;
            for (size_t c = 0; c < d; ++c) out.at(r, c) += v * rhs.at(k, c);
        }
    }
    return out;
}

CMatrix dagger(const CMatrix& m) {
    CMatrix out(m.dim);
    for (size_t r = 0; r < m.dim; ++r) {
        for (size_t c = 0; c < m.dim; ++c) out.at(c, r) = std::conj(m.at(r, c));
    }
    return out;
}

CMatrix kron(const CMatrix& lhs, const CMatrix& rhs) {
    CMatrix out(lhs.dim * rhs.dim);
    for (size_t r1 = 0; r1 < lhs.dim; ++r1) {
        for (size_t c1 = 0; c1 < lhs.dim; ++c1) {
            const cplx v = lhs.at(r1, c1);
            for (size_t r2 = 0; r2 < rhs.dim; ++r2) {
                for (size_t c2 = 0; c2 < rhs.dim; ++c2) {
                    out.at(r1 * rhs.dim + r2, c1 * rhs.dim + c2) = v * rhs.at(r2, c2);
                }
            }
        }
    }
    return out;
}

double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (size_t i = 0; i < lhs.a.size(); ++i) m = std::max(m, std::abs(lhs.a[i] - rhs.a[i]));
    return m;
}

CMatrix gate_matrix_1q(GateKind kind, double angle) {
    CMatrix m(2);
    const cplx i01(0.0, 1.0);
    switch (kind) {
        case GateKind::ID:
        case GateKind::DELAY:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = 1.0;
            break;
        case GateKind::X:
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            break;
        case GateKind::Y:
            m.at(0, 1) = -i01;
            m.at(1, 0) = i01;
            break;
        case GateKind::H:
            m.at(0, 0) = kInvSqrt2;
            m.at(0, 1) = kInvSqrt2;
            m.at(1, 0) = kInvSqrt2;
            m.at(1, 1) = -kInvSqrt2;
            break;
        case GateKind::SX:
            m.at(0, 0) = cplx(0.5, 0.5);
            m.at(0, 1) = cplx(0.5, -0.5);
            m.at(1, 0) = cplx(0.5, -0.5);
            m.at(1, 1) = cplx(0.5, 0.5);
            break;
        case GateKind::RZ:
            m.at(0, 0) = std::exp(cplx(0.0, -angle / 2.0));
            m.at(1, 1) = std::exp(cplx(0.0, angle / 2.0));
            break;
        case GateKind::RX:
            m.at(0, 0) = std::cos(angle / 2.0);
            m.at(0, 1) = -i01 * std::sin(angle / 2.0);
            m.at(1, 0) = -i01 * std::sin(angle / 2.0);
            m.at(1, 1) = std::cos(angle / 2.0);
            break;
        default:
            throw std::invalid_argument("gate_matrix_1q: not a single-qubit kind");
    }
    return m;
}

CMatrix gate_matrix_2q(GateKind kind, double angle) {
    CMatrix m(4);
    switch (kind) {
        case GateKind::CX:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = 1.0;
            m.at(2, 3) = 1.0;
            m.at(3, 2) = 1.0;
            break;
        case GateKind::CZ:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = 1.0;
            m.at(2, 2) = 1.0;
            m.at(3, 3) = -1.0;
            break;
        case GateKind::ECR: {
            // (X (x) I - Y (x) X) / sqrt(2), control = first factor.
            const cplx i01(0.0, 1.0);
            m.at(0, 2) = kInvSqrt2;
            m.at(0, 3) = i01 * kInvSqrt2;
            m.at(1, 2) = i01 * kInvSqrt2;
            m.at(1, 3) = kInvSqrt2;
            m.at(2, 0) = kInvSqrt2;
            m.at(2, 1) = -i01 * kInvSqrt2;
            m.at(3, 0) = -i01 * kInvSqrt2;
            m.at(3, 1) = kInvSqrt2;
            break;
        }
        case GateKind::RZZ: {
            const cplx neg = std::exp(cplx(0.0, -angle / 2.0));
            const cplx pos = std::exp(cplx(0.0, angle / 2.0));
            m.at(0, 0) = neg;
            m.at(1, 1) = pos;
            m.at(2, 2) = pos;
            m.at(3, 3) = neg;
            break;
        }
        default:
            throw std::invalid_argument("gate_matrix_2q: not a two-qubit kind");
    }
    return m;
}

CMatrix unitary_of(const Circuit& circuit) {
    if (circuit.num_qubits > 10) {
        throw std::invalid_argument("unitary_of: circuit exceeds the 10-qubit oracle limit");
    }
    if (circuit.has_measure()) {
        throw std::invalid_argument("unitary_of: MEASURE has no unitary representation");
    }
    const uint32_t n = circuit.num_qubits;
    CMatrix u = CMatrix::identity(size_t{1} << n);
    for (const Gate& g : circuit.gates) {
        if (g.kind == GateKind::ID || g.kind == GateKind::DELAY) continue;
        if (is_two_qubit(g.kind)) {
            // Qubit 0 is the most significant bit of the basis index.
            const size_t hi_bit = n - 1 - g.qubits[0];
            const size_t lo_bit = n - 1 - g.qubits[1];
            apply_2q_rows(u, gate_matrix_2q(g.kind, g.angle), hi_bit, lo_bit);
        } else {
            apply_1q_rows(u, gate_matrix_1q(g.kind, g.angle), n - 1 - g.qubits[0]);
        }
    }
    return u;
}

bool equivalent_up_to_phase(const CMatrix& u, const CMatrix& v, double tol) {
    if (u.dim != v.dim) throw std::invalid_argument("equivalent_up_to_phase: dimension mismatch");
    size_t best = 0;
    double best_mag = -1.0;
    for (size_t i = 0; i < v.a.size(); ++i) {
        const double mag = std::abs(v.a[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag <= tol) return max_abs_diff(u, v) <= tol;
    if (std::abs(u.a[best]) <= tol) return false;
    cplx c = u.a[best] / v.a[best];
    c /= std::abs(c);
    double diff = 0.0;
    for (size_t i = 0; i < u.a.size(); ++i) {
        diff = std::max(diff, std::abs(u.a[i] - c * v.a[i]));
        if (diff > tol) return false;
    }
    return diff <= tol;
}

CMatrix permutation_matrix(const std::vector<uint32_t>& phys_of_logical) {
    const size_t n = phys_of_logical.size();
    const size_t dim = size_t{1} << n;
    CMatrix p(dim);
    for (size_t b = 0; b < dim; ++b) {
        size_t target = 0;
        for (size_t l = 0; l < n; ++l) {
            const size_t bit = (b >> (n - 1 - l)) & 1;
            target |= bit << (n - 1 - phys_of_logical[l]);
        }
        p.at(target, b) = 1.0;
    }
    return p;
}

}  // namespace ddbench
