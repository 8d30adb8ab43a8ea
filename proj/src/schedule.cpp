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

#include "ddbench/schedule.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ddbench {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Qubits an instruction occupies; MEASURE occupies the whole register.
std::vector<uint32_t> covered_qubits(const TimedInstruction& ti, uint32_t num_qubits) {
    if (ti.gate.kind == GateKind::MEASURE) {
        std::vector<uint32_t> all(num_qubits);
        for (uint32_t q = 0; q < num_qubits; ++q) all[q] = q;
        return all;
    }
    return ti.gate.qubits;
}

void sort_by_time(std::vector<TimedInstruction>& instructions) {
    std::stable_sort(instructions.begin(), instructions.end(),
                     [](const TimedInstruction& a, const TimedInstruction& b) {
                         if (a.start_dt != b.start_dt) return a.start_dt < b.start_dt;
                         return a.seq < b.seq;
                     });
}

}  // namespace

std::string_view dd_sequence_name(DDSequence s) {
    return s == DDSequence::CPMG ? "CPMG" : "XY4";
}

DDSequence dd_sequence_from_name(std::string_view name) {
    if (name == "CPMG") return DDSequence::CPMG;
    if (name == "XY4") return DDSequence::XY4;
    throw std::invalid_argument("unknown DD sequence: " + std::string(name));
}

void Schedule::validate() const {
    int64_t max_end = 0;
    std::vector<std::vector<std::pair<int64_t, int64_t>>> busy(num_qubits);
    for (const TimedInstruction& ti : instructions) {
        if (ti.start_dt < 0) throw std::invalid_argument("schedule: negative start time");
        const int64_t end = ti.start_dt + ti.duration_dt;
        max_end = std::max(max_end, end);
        if (ti.duration_dt == 0) continue;
        for (uint32_t q : covered_qubits(ti, num_qubits)) {
            busy[q].emplace_back(ti.start_dt, end);
        }
    }
    for (uint32_t q = 0; q < num_qubits; ++q) {
        auto& intervals = busy[q];
        std::sort(intervals.begin(), intervals.end());
        for (size_t i = 1; i < intervals.size(); ++i) {
            if (intervals[i].first < intervals[i - 1].second) {
                throw std::invalid_argument("schedule: overlapping intervals on qubit " +
                                            std::to_string(q));
            }
        }
    }
    if (max_end != total_dt) {
        throw std::invalid_argument("schedule: total_dt " + std::to_string(total_dt) +
                                    " does not match last instruction end " +
                                    std::to_string(max_end));
    }
}

Schedule alap_schedule(const Circuit& circuit, const DeviceModel& device) {
    circuit.validate();
    if (circuit.num_qubits > device.chain_length) {
        throw std::invalid_argument("alap_schedule: circuit wider than the device chain");
    }
    for (const Gate& g : circuit.gates) {
        if (is_two_qubit(g.kind) && !device.adjacent(g.qubits[0], g.qubits[1])) {
            throw std::invalid_argument("alap_schedule: two-qubit gate on non-adjacent pair");
        }
    }

    const size_t count = circuit.gates.size();
    std::vector<int64_t> rev_start(count, 0);
    std::vector<int64_t> durations(count, 0);
    std::vector<int64_t> cursor(circuit.num_qubits, 0);  // time measured from the end

    for (size_t idx = count; idx-- > 0;) {
        const Gate& g = circuit.gates[idx];
        durations[idx] = gate_duration(device, g);
        TimedInstruction probe{g, 0, durations[idx], 0};
        int64_t s = 0;
        for (uint32_t q : covered_qubits(probe, circuit.num_qubits)) s = std::max(s, cursor[q]);
        rev_start[idx] = s;
        for (uint32_t q : covered_qubits(probe, circuit.num_qubits)) cursor[q] = s + durations[idx];
    }
    int64_t total = 0;
    for (int64_t c : cursor) total = std::max(total, c);

    Schedule sched;
    sched.device_name = device.name;
    sched.num_qubits = circuit.num_qubits;
    sched.total_dt = total;
    sched.instructions.reserve(count);
    for (size_t idx = 0; idx < count; ++idx) {
        TimedInstruction ti;
        ti.gate = circuit.gates[idx];
        ti.duration_dt = durations[idx];
        ti.start_dt = total - rev_start[idx] - durations[idx];
        ti.seq = idx;
        sched.instructions.push_back(std::move(ti));
    }
    sort_by_time(sched.instructions);
    return sched;
}

std::vector<IdleWindow> idle_windows(const Schedule& schedule) {
    std::vector<std::vector<std::pair<int64_t, int64_t>>> busy(schedule.num_qubits);
    for (const TimedInstruction& ti : schedule.instructions) {
        if (ti.duration_dt == 0) continue;
        for (uint32_t q : covered_qubits(ti, schedule.num_qubits)) {
            busy[q].emplace_back(ti.start_dt, ti.start_dt + ti.duration_dt);
        }
    }
    std::vector<IdleWindow> windows;
    for (uint32_t q = 0; q < schedule.num_qubits; ++q) {
        auto& intervals = busy[q];
        std::sort(intervals.begin(), intervals.end());
        for (size_t i = 1; i < intervals.size(); ++i) {
            const int64_t gap = intervals[i].first - intervals[i - 1].second;
            if (gap > 0) windows.push_back({q, intervals[i - 1].second, gap});
        }
    }
    return windows;
}

std::vector<int64_t> dd_delays(int64_t window_span, int64_t pulse_dt, DDSequence seq) {
    const int64_t pulses = seq == DDSequence::CPMG ? 2 : 4;
    const int64_t t = window_span - pulses * pulse_dt;
    if (t < 0) return {};
    std::vector<int64_t> delays;
    if (seq == DDSequence::CPMG) {
        delays = {t / 4, t / 2, 0};
    } else {
        delays = {t / 8, t / 4, t / 4, t / 4, 0};
    }
    int64_t used = 0;
    for (size_t i = 0; i + 1 < delays.size(); ++i) used += delays[i];
    delays.back() = t - used;  // rounding remainder lands on the final delay
    return delays;
}

Schedule insert_dd(const Schedule& schedule, DDSequence seq, const DeviceModel& device) {
    struct Keyed {
        TimedInstruction ti;
        uint64_t base_seq;
        uint32_t sub;
    };
    std::vector<Keyed> all;
    all.reserve(schedule.instructions.size());
    for (const TimedInstruction& ti : schedule.instructions) {
        all.push_back({ti, ti.seq, 0});
    }

    // A padding instruction sorts right after the instruction that closes on
    // the window's left edge.
    std::map<std::pair<uint32_t, int64_t>, uint64_t> seq_at_end;  // (qubit, end time) -> seq
    for (const TimedInstruction& ti : schedule.instructions) {
        if (ti.duration_dt == 0) continue;
        for (uint32_t q : covered_qubits(ti, schedule.num_qubits)) {
            seq_at_end[{q, ti.start_dt + ti.duration_dt}] = ti.seq;
        }
    }

    const int64_t pulse = device.single_pulse_dt;
    for (const IdleWindow& window : idle_windows(schedule)) {
        const std::vector<int64_t> delays = dd_delays(window.span_dt, pulse, seq);
        if (delays.empty()) continue;  // window too short for the echo train

        const auto it = seq_at_end.find({window.qubit, window.start_dt});
        const uint64_t base = it == seq_at_end.end() ? 0 : it->second;
        uint32_t sub = 0;
        int64_t cursor = window.start_dt;
        auto emit = [&](Gate g, int64_t duration) {
            all.push_back({TimedInstruction{std::move(g), cursor, duration, base}, base, ++sub});
            cursor += duration;
        };

        const uint32_t q = window.qubit;
        const size_t pulses = seq == DDSequence::CPMG ? 2 : 4;
        for (size_t i = 0; i < pulses; ++i) {
            if (delays[i] > 0) emit(Gate::delay(q, delays[i]), delays[i]);
            if (seq == DDSequence::XY4 && (i % 2 == 1)) {
                // Y pulse as zero-duration RZ wrappers around a timed X.
                emit(Gate::rz(q, -kPi / 2.0), 0);
                emit(Gate::x(q), pulse);
                emit(Gate::rz(q, kPi / 2.0), 0);
            } else {
                emit(Gate::x(q), pulse);
            }
        }
        if (delays.back() > 0) emit(Gate::delay(q, delays.back()), delays.back());
    }

    std::stable_sort(all.begin(), all.end(), [](const Keyed& a, const Keyed& b) {
        if (a.ti.start_dt != b.ti.start_dt) return a.ti.start_dt < b.ti.start_dt;
        if (a.base_seq != b.base_seq) return a.base_seq < b.base_seq;
        return a.sub < b.sub;
    });

    Schedule out;
    out.device_name = schedule.device_name;
    out.num_qubits = schedule.num_qubits;
    out.total_dt = schedule.total_dt;
    out.instructions.reserve(all.size());
    for (size_t i = 0; i < all.size(); ++i) {
        TimedInstruction ti = std::move(all[i].ti);
        ti.seq = i;
        out.instructions.push_back(std::move(ti));
    }
    return out;
}

Circuit schedule_as_circuit(const Schedule& schedule) {
    Circuit c(schedule.num_qubits, "schedule");
    for (const TimedInstruction& ti : schedule.instructions) c.push(ti.gate);
    return c;
}

std::string dump_schedule(const Schedule& schedule) {
    std::vector<const TimedInstruction*> order;
    order.reserve(schedule.instructions.size());
    for (const TimedInstruction& ti : schedule.instructions) order.push_back(&ti);
    std::stable_sort(order.begin(), order.end(), [](const TimedInstruction* a, const TimedInstruction* b) {
        if (a->start_dt != b->start_dt) return a->start_dt < b->start_dt;
        const uint32_t qa = a->gate.qubits.empty() ? 0 : a->gate.qubits[0];
        const uint32_t qb = b->gate.qubits.empty() ? 0 : b->gate.qubits[0];
        if (qa != qb) return qa < qb;
        return a->seq < b->seq;
    });

    std::ostringstream os;
    os.precision(17);
    for (const TimedInstruction* ti : order) {
        os << ti->start_dt << " " << kind_name(ti->gate.kind);
        for (size_t i = 0; i < ti->gate.qubits.size(); ++i) {
            os << (i == 0 ? " " : ",") << ti->gate.qubits[i];
        }
        if (has_angle(ti->gate.kind)) os << "@" << ti->gate.angle;
        if (ti->gate.kind == GateKind::DELAY) os << "#" << ti->gate.delay_dt;
        os << "\n";
    }
    return os.str();
}

}  // namespace ddbench
