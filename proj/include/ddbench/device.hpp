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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ddbench/circuit.hpp"

namespace ddbench {

enum class Native2Q { CX, ECR };

std::string_view native_2q_name(Native2Q g);

/// Calibration snapshot of a linear-chain device: native gate set, timing in
/// dt ticks, fidelities, coherence, readout. Immutable after load.
struct DeviceModel {
    std::string name;
    Native2Q native_2q = Native2Q::CX;
    double dt_ns = 0.0;
    uint32_t chain_length = 0;

    /// Supported (control, target) directions; both per pair for CX devices,
    /// exactly one per pair for ECR devices.
    std::vector<std::pair<uint32_t, uint32_t>> directed_pairs;

    // X, SX and the Y pulse share the single-pulse duration; RZ/ID are
    // virtual (0 dt).
    int64_t single_pulse_dt = 0;
    int64_t two_qubit_dt = 0;
    int64_t measure_dt = 0;

    std::vector<double> f_1q;                                   // per qubit
    std::map<std::pair<uint32_t, uint32_t>, double> f_2q;       // keyed (min,max)
    std::vector<double> f_meas;                                 // per qubit
    std::vector<double> t1_ns;
    std::vector<double> t2_ns;
    std::vector<double> readout_flip;                           // symmetric flip probability
    double detuning_sigma = 0.0;                                // rad per dt, quasi-static idle detuning

    bool adjacent(uint32_t a, uint32_t b) const { return a + 1 == b || b + 1 == a; }
    bool supports_direction(uint32_t control, uint32_t target) const;
    double fid_1q(uint32_t q) const;
    double fid_2q(uint32_t a, uint32_t b) const;
    double fid_meas(uint32_t q) const;

    /// Checks every model invariant; throws std::invalid_argument naming the
    /// offending field and qubit.
    void validate() const;
};

DeviceModel load_device(const std::string& path);
DeviceModel device_from_json_text(const std::string& text);
std::string device_to_json_text(const DeviceModel& device);
void save_device(const DeviceModel& device, const std::string& path);

/// Calibrated duration of one gate in dt. RZ/ID are 0, DELAY returns its
/// span, MEASURE its calibrated duration. Throws on a kind the device cannot
/// execute.
int64_t gate_duration(const DeviceModel& device, const Gate& gate);

}  // namespace ddbench
