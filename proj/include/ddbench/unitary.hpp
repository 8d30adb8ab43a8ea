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

#include <complex>
#include <cstddef>
#include <vector>

#include "ddbench/circuit.hpp"

namespace ddbench {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for oracle work (dim <= 1024), not
/// for the simulator hot paths.
struct CMatrix {
    size_t dim = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    explicit CMatrix(size_t d) : dim(d), a(d * d, cplx(0.0, 0.0)) {}

    cplx& at(size_t r, size_t c) { return a[r * dim + c]; }
    const cplx& at(size_t r, size_t c) const { return a[r * dim + c]; }

    static CMatrix identity(size_t d);
};

CMatrix matmul(const CMatrix& lhs, const CMatrix& rhs);
CMatrix dagger(const CMatrix& m);
CMatrix kron(const CMatrix& lhs, const CMatrix& rhs);
double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs);

/// 2x2 matrix for a single-qubit kind (ID/X/SX/RZ/H/RX/Y).
CMatrix gate_matrix_1q(GateKind kind, double angle = 0.0);

/// 4x4 matrix for a two-qubit kind (CX/CZ/ECR/RZZ). The first operand is the
/// high bit of the 2-qubit basis index. ECR is fixed repo-wide as
/// (X (x) I - Y (x) X) / sqrt(2) with the control on the first factor.
CMatrix gate_matrix_2q(GateKind kind, double angle = 0.0);

/// Exact product of the circuit's gate matrices at tensor positions.
/// Qubit 0 is the most significant bit of the basis index. DELAY acts as
/// identity. Requires num_qubits <= 10 and no MEASURE; throws otherwise.
CMatrix unitary_of(const Circuit& circuit);

/// True iff U = c V entrywise within tol for some unit-modulus scalar c.
/// c is read off the largest-magnitude entry of V. Throws on dimension
/// mismatch.
bool equivalent_up_to_phase(const CMatrix& u, const CMatrix& v, double tol);

/// Permutation unitary P with P|b> = |b'> where bit l of b lands at position
/// phys_of_logical[l] of b' (qubit 0 = most significant bit throughout).
CMatrix permutation_matrix(const std::vector<uint32_t>& phys_of_logical);

}  // namespace ddbench
