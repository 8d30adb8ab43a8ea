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

#include "ddbench/device.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ddbench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::pair<uint32_t, uint32_t> undirected(uint32_t a, uint32_t b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// Scalar-or-array calibration entries: a scalar applies to every qubit.
std::vector<double> per_qubit(const json& j, uint32_t n, const char* field) {
    std::vector<double> out;
    if (j.is_number()) {
        out.assign(n, j.get<double>());
    } else if (j.is_array()) {
        out = j.get<std::vector<double>>();
        if (out.size() != n) {
            throw std::invalid_argument(std::string("device field '") + field + "' has " +
                                        std::to_string(out.size()) + " entries for " +
                                        std::to_string(n) + " qubits");
        }
    } else {
        throw std::invalid_argument(std::string("device field '") + field +
                                    "' must be a number or an array");
    }
    return out;
}

}  // namespace

std::string_view native_2q_name(Native2Q g) {
    return g == Native2Q::CX ? "CX" : "ECR";
}

bool DeviceModel::supports_direction(uint32_t control, uint32_t target) const {
    for (const auto& [c, t] : directed_pairs) {
        if (c == control && t == target) return true;
    }
    return false;
}

double DeviceModel::fid_1q(uint32_t q) const {
    if (q >= f_1q.size()) throw std::invalid_argument("f_1q: qubit " + std::to_string(q) + " not calibrated");
    return f_1q[q];
}

double DeviceModel::fid_2q(uint32_t a, uint32_t b) const {
    const auto it = f_2q.find(undirected(a, b));
    if (it == f_2q.end()) {
        throw std::invalid_argument("f_2q: pair (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") not calibrated");
    }
    return it->second;
}

double DeviceModel::fid_meas(uint32_t q) const {
    if (q >= f_meas.size()) throw std::invalid_argument("f_meas: qubit " + std::to_string(q) + " not calibrated");
    return f_meas[q];
}

void DeviceModel::validate() const {
    if (dt_ns <= 0.0) throw std::invalid_argument("device '" + name + "': dt_ns must be > 0");
    if (chain_length == 0) throw std::invalid_argument("device '" + name + "': empty chain");
    if (single_pulse_dt < 0 || two_qubit_dt < 0 || measure_dt < 0) {
        throw std::invalid_argument("device '" + name + "': durations must be >= 0");
    }
    const uint32_t n = chain_length;
    auto check_len = [&](const std::vector<double>& v, const char* field) {
        if (v.size() != n) {
            throw std::invalid_argument("device '" + name + "': field '" + field +
                                        "' must have one entry per qubit");
        }
    };
    check_len(f_1q, "f_1q");
    check_len(f_meas, "f_meas");
    check_len(t1_ns, "t1_ns");
    check_len(t2_ns, "t2_ns");
    check_len(readout_flip, "readout_flip");
    for (uint32_t q = 0; q < n; ++q) {
        if (!(f_1q[q] > 0.0 && f_1q[q] <= 1.0)) {
            throw std::invalid_argument("device '" + name + "': f_1q out of (0,1] at qubit " +
                                        std::to_string(q));
        }
        if (!(f_meas[q] > 0.0 && f_meas[q] <= 1.0)) {
            throw std::invalid_argument("device '" + name + "': f_meas out of (0,1] at qubit " +
                                        std::to_string(q));
        }
        if (t1_ns[q] <= 0.0 || t2_ns[q] <= 0.0) {
            throw std::invalid_argument("device '" + name + "': coherence times must be > 0 at qubit " +
                                        std::to_string(q));
        }
        if (t2_ns[q] > 2.0 * t1_ns[q]) {
            throw std::invalid_argument("device '" + name + "': t2 > 2*t1 at qubit " +
                                        std::to_string(q));
        }
        if (readout_flip[q] < 0.0 || readout_flip[q] > 1.0) {
            throw std::invalid_argument("device '" + name + "': readout flip out of [0,1] at qubit " +
                                        std::to_string(q));
        }
    }
    if (detuning_sigma < 0.0) throw std::invalid_argument("device '" + name + "': detuning_sigma < 0");

    std::map<std::pair<uint32_t, uint32_t>, int> per_pair;
    for (const auto& [c, t] : directed_pairs) {
        if (c >= n || t >= n) {
            throw std::invalid_argument("device '" + name + "': directed pair operand out of range");
        }
        if (!adjacent(c, t)) {
            throw std::invalid_argument("device '" + name + "': directed pair (" + std::to_string(c) +
                                        "," + std::to_string(t) + ") is not a chain edge");
        }
        ++per_pair[undirected(c, t)];
    }
    for (uint32_t q = 0; q + 1 < n; ++q) {
        const auto key = std::make_pair(q, q + 1);
        const auto it = per_pair.find(key);
        const int count = it == per_pair.end() ? 0 : it->second;
        if (native_2q == Native2Q::ECR && count != 1) {
            throw std::invalid_argument("device '" + name + "': ECR devices support exactly one direction per pair, pair (" +
                                        std::to_string(q) + "," + std::to_string(q + 1) + ") has " +
                                        std::to_string(count));
        }
        if (native_2q == Native2Q::CX && count != 2) {
            throw std::invalid_argument("device '" + name + "': CX devices list both directions per pair, pair (" +
                                        std::to_string(q) + "," + std::to_string(q + 1) + ") has " +
                                        std::to_string(count));
        }
        const auto fit = f_2q.find(key);
        if (fit == f_2q.end() || !(fit->second > 0.0 && fit->second <= 1.0)) {
            throw std::invalid_argument("device '" + name + "': f_2q missing or out of (0,1] for pair (" +
                                        std::to_string(q) + "," + std::to_string(q + 1) + ")");
        }
    }
}

DeviceModel device_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("device calibration parse error: ") + e.what());
    }

    DeviceModel d;
    try {
        d.name = j.at("name").get<std::string>();
        const std::string native = j.at("native_2q").get<std::string>();
        if (native == "CX") {
            d.native_2q = Native2Q::CX;
        } else if (native == "ECR") {
            d.native_2q = Native2Q::ECR;
        } else {
            throw std::invalid_argument("native_2q must be CX or ECR");
        }
        d.dt_ns = j.at("dt_ns").get<double>();
        d.chain_length = j.at("chain_length").get<uint32_t>();

        const json& dur = j.at("durations");
        d.single_pulse_dt = dur.at("single_pulse").get<int64_t>();
        d.two_qubit_dt = dur.at("two_qubit").get<int64_t>();
        d.measure_dt = dur.at("measure").get<int64_t>();

        const json& dirs = j.at("directions");
        if (dirs.is_string()) {
            const std::string mode = dirs.get<std::string>();
            for (uint32_t q = 0; q + 1 < d.chain_length; ++q) {
                if (mode == "both") {
                    d.directed_pairs.emplace_back(q, q + 1);
                    d.directed_pairs.emplace_back(q + 1, q);
                } else if (mode == "low_to_high") {
                    d.directed_pairs.emplace_back(q, q + 1);
                } else if (mode == "high_to_low") {
                    d.directed_pairs.emplace_back(q + 1, q);
                } else {
                    throw std::invalid_argument("directions must be both/low_to_high/high_to_low or a pair list");
                }
            }
        } else {
            for (const auto& p : dirs) {
                d.directed_pairs.emplace_back(p.at(0).get<uint32_t>(), p.at(1).get<uint32_t>());
            }
        }

        const json& fid = j.at("fidelities");
        d.f_1q = per_qubit(fid.at("f_1q"), d.chain_length, "f_1q");
        d.f_meas = per_qubit(fid.at("f_meas"), d.chain_length, "f_meas");
        const json& f2 = fid.at("f_2q");
        if (f2.is_number()) {
            for (uint32_t q = 0; q + 1 < d.chain_length; ++q) {
                d.f_2q[{q, q + 1}] = f2.get<double>();
            }
        } else {
            for (const auto& e : f2) {
                const auto& pr = e.at("pair");
                d.f_2q[undirected(pr.at(0).get<uint32_t>(), pr.at(1).get<uint32_t>())] =
                    e.at("value").get<double>();
            }
        }

        const json& coh = j.at("coherence");
        d.t1_ns = per_qubit(coh.at("t1_ns"), d.chain_length, "t1_ns");
        d.t2_ns = per_qubit(coh.at("t2_ns"), d.chain_length, "t2_ns");
        d.readout_flip = per_qubit(j.at("readout").at("flip_probability"), d.chain_length, "flip_probability");
        d.detuning_sigma = j.at("detuning_sigma").get<double>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("device calibration schema error: ") + e.what());
    }

    d.validate();
    return d;
}

DeviceModel load_device(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open device calibration file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return device_from_json_text(text);
}

std::string device_to_json_text(const DeviceModel& d) {
    ordered_json j;
    j["name"] = d.name;
    j["native_2q"] = std::string(native_2q_name(d.native_2q));
    j["dt_ns"] = d.dt_ns;
    j["chain_length"] = d.chain_length;
    ordered_json dirs = ordered_json::array();
    for (const auto& [c, t] : d.directed_pairs) dirs.push_back({c, t});
    j["directions"] = dirs;
    j["durations"] = {{"single_pulse", d.single_pulse_dt},
                      {"two_qubit", d.two_qubit_dt},
                      {"measure", d.measure_dt}};
    ordered_json f2 = ordered_json::array();
    for (const auto& [pair, value] : d.f_2q) {
        f2.push_back({{"pair", {pair.first, pair.second}}, {"value", value}});
    }
    j["fidelities"] = {{"f_1q", d.f_1q}, {"f_2q", f2}, {"f_meas", d.f_meas}};
    j["coherence"] = {{"t1_ns", d.t1_ns}, {"t2_ns", d.t2_ns}};
    j["readout"] = {{"flip_probability", d.readout_flip}};
    j["detuning_sigma"] = d.detuning_sigma;
    return j.dump(2) + "\n";
}

void save_device(const DeviceModel& device, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write device calibration file: " + path);
    out << device_to_json_text(device);
}

int64_t gate_duration(const DeviceModel& device, const Gate& gate) {
    switch (gate.kind) {
        case GateKind::RZ:
        case GateKind::ID:
            return 0;
        case GateKind::DELAY:
            return gate.delay_dt;
        case GateKind::MEASURE:
            return device.measure_dt;
        case GateKind::X:
        case GateKind::SX:
        case GateKind::Y:
            // Y the pulse shares the single-pulse duration even though it is
            // lowered before scheduling.
            return device.single_pulse_dt;
        case GateKind::CX:
            if (device.native_2q != Native2Q::CX) break;
            return device.two_qubit_dt;
        case GateKind::ECR:
            if (device.native_2q != Native2Q::ECR) break;
            return device.two_qubit_dt;
        default:
            break;
    }
    throw std::invalid_argument("gate kind " + std::string(kind_name(gate.kind)) +
                                " is not native to device '" + device.name + "'");
}

}  // namespace ddbench
