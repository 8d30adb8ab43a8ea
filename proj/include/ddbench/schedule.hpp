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
#include <vector>

#include "ddbench/circuit.hpp"
#include "ddbench/device.hpp"

namespace ddbench {

struct TimedInstruction {
    Gate gate;
    int64_t start_dt = 0;
    int64_t duration_dt = 0;
    uint64_t seq = 0;  // per-qubit program order for equal start times
};

struct Schedule {
    std::string device_name;
    uint32_t num_qubits = 0;
    std::vector<TimedInstruction> instructions;  // sorted by (start_dt, seq)
    int64_t total_dt = 0;

    /// Per-qubit interval disjointness, start bounds and total_dt
    /// consistency. Throws std::invalid_argument.
    void validate() const;
};

struct IdleWindow {
    uint32_t qubit = 0;
    int64_t start_dt = 0;
    int64_t span_dt = 0;
};

enum class DDSequence { CPMG, XY4 };

std::string_view dd_sequence_name(DDSequence s);
DDSequence dd_sequence_from_name(std::string_view name);

/// As-late-as-possible scheduling: a reverse-topological sweep gives every
/// instruction the latest start compatible with its successors and qubit
/// exclusivity. RZ/ID consume no timeline; MEASURE ends simultaneously on
/// all qubits.
Schedule alap_schedule(const Circuit& circuit, const DeviceModel& device);

/// Per-qubit gaps between occupied intervals, strictly inside the qubit's
/// first and last instruction. Leading idle time is excluded.
std::vector<IdleWindow> idle_windows(const Schedule& schedule);

/// Integer-dt echo spacing for one window: the delays around m pulses of
/// duration pulse_dt (m = 2 for CPMG, 4 for XY4). CPMG aims at t/4, t/2,
/// t/4 and XY4 at t/8 with t/4 interior, t = span - m * pulse_dt; delays are
/// rounded down and the remainder lands on the final delay so the window is
/// tiled exactly. Empty result when the window is too short (t < 0).
std::vector<int64_t> dd_delays(int64_t window_span, int64_t pulse_dt, DDSequence seq);

/// Pads every feasible idle window with the requested sequence. X pulses are
/// emitted directly; Y pulses as zero-duration RZ wrappers around X.
/// total_dt and all instructions outside windows are unchanged.
Schedule insert_dd(const Schedule& schedule, DDSequence seq, const DeviceModel& device);

/// Timed instructions flattened back to a circuit in time order (stable for
/// simultaneous zero-duration instructions).
Circuit schedule_as_circuit(const Schedule& schedule);

/// Text dump, one instruction per line `start_dt KIND qubits [@angle|#span]`,
/// sorted by (start_dt, qubit). Used by golden tests.
std::string dump_schedule(const Schedule& schedule);

}  // namespace ddbench
