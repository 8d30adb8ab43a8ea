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

#include "ddbench/circuit.hpp"
#include "ddbench/device.hpp"
#include "ddbench/unitary.hpp"

namespace ddbench {

/// How ZZ interactions are decomposed into two-qubit primitives.
enum class DecompositionStyle { CX_IMPL, CZ_IMPL };

/// In-repo optimization presets standing in for two transpiler settings.
enum class OptPreset { OPT1, OPT3 };

std::string_view style_name(DecompositionStyle s);
std::string_view preset_name(OptPreset p);
DecompositionStyle style_from_name(std::string_view name);
OptPreset preset_from_name(std::string_view name);

/// RZZ(theta) as CX(q0,q1), RZ(theta) q1, CX(q0,q1). Equal to RZZ exactly.
Circuit rzz_as_cx(double theta, uint32_t q0, uint32_t q1);

/// RZZ(theta) as H(q1), CZ, RX(theta) q1, CZ, H(q1); equivalent up to phase.
Circuit rzz_as_cz(double theta, uint32_t q0, uint32_t q1);

/// CX via exactly one ECR plus {RZ, SX, X} corrections. The corrections were
/// derived once against the repo-wide ECR matrix and are frozen here; the
/// unitary-equivalence tests pin them down.
Circuit cx_as_ecr(uint32_t control, uint32_t target);

/// CX with the opposite native direction: H-conjugation on both qubits
/// around the natively supported CX. Pre-lowering form (contains H).
Circuit reverse_cx(uint32_t control, uint32_t target);

/// Canonical single-qubit resynthesis: RZ, SX, RZ, SX, RZ with zero-angle
/// elision, matching u up to global phase.
std::vector<Gate> zsx_synthesis(const CMatrix& u, uint32_t qubit);

/// Rewrites a circuit onto the device's native gate set (plus DELAY and
/// MEASURE), expanding RZZ per the requested style and re-expressing
/// two-qubit gates onto supported directions. Two-qubit gates must touch
/// adjacent chain qubits; routing happens upstream.
Circuit lower_to_basis(const Circuit& circuit, const DeviceModel& device,
                       DecompositionStyle style = DecompositionStyle::CX_IMPL);

/// Peephole optimization of a lowered circuit. OPT1: cancel adjacent
/// self-inverse pairs, merge/drop RZ, drop ID, to a fixed point. OPT3 adds
/// canonical resynthesis of maximal single-qubit runs and commutes RZ on CX
/// control lines toward the circuit end. Unitary preserved up to phase; the
/// gate count never increases; idempotent.
Circuit optimize(const Circuit& circuit, OptPreset preset);

}  // namespace ddbench
