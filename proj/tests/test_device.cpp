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

#include <doctest.h>

#include <cmath>

#include "ddbench/device.hpp"
#include "test_support.hpp"

using namespace ddbench;

TEST_CASE("bundled cairo-like calibration") {
    const DeviceModel d = load_device(testing::data_path("devices/cairo_like.json"));
    CHECK(d.native_2q == Native2Q::CX);
    CHECK(d.single_pulse_dt == 112);
    CHECK(d.two_qubit_dt == 1312);
    CHECK(std::fabs(d.dt_ns - 2.0 / 9.0) < 1e-12);
    CHECK(d.supports_direction(0, 1));
    CHECK(d.supports_direction(1, 0));
    CHECK(d.chain_length == 27);
}

TEST_CASE("bundled cusco-like calibration") {
    const DeviceModel d = load_device(testing::data_path("devices/cusco_like.json"));
    CHECK(d.native_2q == Native2Q::ECR);
    CHECK(d.single_pulse_dt == 88);
    CHECK(d.two_qubit_dt == 920);
    CHECK(d.dt_ns == 0.5);
    // One supported direction per physical pair.
    CHECK(d.supports_direction(3, 4));
    CHECK_FALSE(d.supports_direction(4, 3));
}

TEST_CASE("coherence invariant t2 <= 2 t1 is enforced on load") {
    const std::string text = R"({
      "name": "broken", "native_2q": "CX", "dt_ns": 0.5, "chain_length": 2,
      "directions": "both",
      "durations": {"single_pulse": 100, "two_qubit": 1000, "measure": 4000},
      "fidelities": {"f_1q": 0.999, "f_2q": 0.99, "f_meas": 0.98},
      "coherence": {"t1_ns": 100.0, "t2_ns": 300.0},
      "readout": {"flip_probability": 0.01},
      "detuning_sigma": 0.0
    })";
    CHECK_THROWS_WITH_AS(device_from_json_text(text), doctest::Contains("t2 > 2*t1"),
                         std::invalid_argument);
}

TEST_CASE("ECR devices must list exactly one direction per pair") {
    const std::string text = R"({
      "name": "broken", "native_2q": "ECR", "dt_ns": 0.5, "chain_length": 2,
      "directions": "both",
      "durations": {"single_pulse": 88, "two_qubit": 920, "measure": 4000},
      "fidelities": {"f_1q": 0.999, "f_2q": 0.99, "f_meas": 0.98},
      "coherence": {"t1_ns": 10000.0, "t2_ns": 10000.0},
      "readout": {"flip_probability": 0.01},
      "detuning_sigma": 0.0
    })";
    CHECK_THROWS_WITH_AS(device_from_json_text(text), doctest::Contains("exactly one direction"),
                         std::invalid_argument);
}

TEST_CASE("gate durations") {
    const DeviceModel cairo = load_device(testing::data_path("devices/cairo_like.json"));
    const DeviceModel cusco = load_device(testing::data_path("devices/cusco_like.json"));
    CHECK(gate_duration(cairo, Gate::rz(0, 1.0)) == 0);
    CHECK(gate_duration(cairo, Gate::id(0)) == 0);
    CHECK(gate_duration(cairo, Gate::cx(0, 1)) == 1312);
    CHECK(gate_duration(cairo, Gate::delay(0, 321)) == 321);
    CHECK(gate_duration(cairo, Gate::measure()) == 15840);
    CHECK(gate_duration(cusco, Gate::x(0)) == 88);
    CHECK(gate_duration(cusco, Gate::ecr(0, 1)) == 920);
    CHECK_THROWS_AS(gate_duration(cairo, Gate::ecr(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(gate_duration(cusco, Gate::cx(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(gate_duration(cairo, Gate::h(0)), std::invalid_argument);
}

TEST_CASE("serialize then load round-trips the model") {
    for (const char* file : {"devices/cairo_like.json", "devices/cusco_like.json"}) {
        const DeviceModel d = load_device(testing::data_path(file));
        const DeviceModel back = device_from_json_text(device_to_json_text(d));
        CHECK(back.name == d.name);
        CHECK(back.native_2q == d.native_2q);
        CHECK(back.dt_ns == d.dt_ns);
        CHECK(back.chain_length == d.chain_length);
        CHECK(back.directed_pairs == d.directed_pairs);
        CHECK(back.single_pulse_dt == d.single_pulse_dt);
        CHECK(back.two_qubit_dt == d.two_qubit_dt);
        CHECK(back.measure_dt == d.measure_dt);
        CHECK(back.f_1q == d.f_1q);
        CHECK(back.f_2q == d.f_2q);
        CHECK(back.f_meas == d.f_meas);
        CHECK(back.t1_ns == d.t1_ns);
        CHECK(back.t2_ns == d.t2_ns);
        CHECK(back.readout_flip == d.readout_flip);
        CHECK(back.detuning_sigma == d.detuning_sigma);
    }
}

TEST_CASE("duration totals are order independent") {
    const DeviceModel cairo = load_device(testing::data_path("devices/cairo_like.json"));
    Rng rng(5);
    Circuit c = testing::random_native_circuit(rng, 4, 30, cairo);
    int64_t forward = 0;
    for (const Gate& g : c.gates) forward += gate_duration(cairo, g);
    int64_t backward = 0;
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) backward += gate_duration(cairo, *it);
    CHECK(forward == backward);
}
