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

#include "ddbench/circuit.hpp"
#include "test_support.hpp"

using namespace ddbench;

TEST_CASE("gate arity and operand validation") {
    CHECK_THROWS_AS((Gate{GateKind::CX, {1, 1}, 0.0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Gate{GateKind::X, {0, 1}, 0.0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Gate{GateKind::MEASURE, {0}, 0.0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(Gate::rz(0, std::nan("")).validate(), std::invalid_argument);
    CHECK_THROWS_AS((Gate{GateKind::DELAY, {0}, 0.0, -5}.validate()), std::invalid_argument);
    CHECK_NOTHROW(Gate::cx(0, 1).validate());
    CHECK_NOTHROW(Gate::measure().validate());
}

TEST_CASE("circuit index bounds and measure-final layer") {
    Circuit c(2);
    CHECK_THROWS_AS(c.push(Gate::x(2)), std::invalid_argument);
    c.push(Gate::x(0));
    c.push(Gate::measure());
    CHECK_NOTHROW(c.validate());

    Circuit bad(2);
    bad.gates.push_back(Gate::measure());
    bad.gates.push_back(Gate::x(0));
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("circuit text grammar") {
    Circuit c(3, "golden");
    c.push(Gate::h(0));
    c.push(Gate::rz(1, 0.5));
    c.push(Gate::cx(0, 1));
    c.push(Gate::rzz(1, 2, -1.25));
    c.push(Gate::delay(2, 400));
    c.push(Gate::measure());

    const std::string text = to_text(c);
    CHECK(text.find("RZ 1@0.5") != std::string::npos);
    CHECK(text.find("CX 0,1") != std::string::npos);
    CHECK(text.find("DELAY 2#400") != std::string::npos);
    CHECK(text.find("MEASURE") != std::string::npos);

    const Circuit back = circuit_from_text(text, 3, "golden");
    REQUIRE(back.gates.size() == c.gates.size());
    CHECK(back.gates == c.gates);
}

TEST_CASE("circuit text round trip on random circuits") {
    Rng rng(411);
    for (int trial = 0; trial < 50; ++trial) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng.below(4));
        Circuit c = testing::random_ir_circuit(rng, n, 20);
        const Circuit back = circuit_from_text(to_text(c), n);
        CHECK(back.gates == c.gates);
    }
}

TEST_CASE("circuit text parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(circuit_from_text("X 0\nBOGUS 1\n", 2), doctest::Contains("line 2"),
                         std::invalid_argument);
    CHECK_THROWS_AS(circuit_from_text("CX 0,0\n", 2), std::invalid_argument);
    CHECK_THROWS_AS(circuit_from_text("X 7\n", 2), std::invalid_argument);
}

TEST_CASE("comment and blank lines are skipped") {
    const Circuit c = circuit_from_text("# header\n\nX 0\n  \nMEASURE\n", 1);
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0].kind == GateKind::X);
    CHECK(c.gates[1].kind == GateKind::MEASURE);
}
