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

#include "ddbench/metrics.hpp"
#include "test_support.hpp"

using namespace ddbench;

namespace {

const DeviceModel& cairo() {
    static const DeviceModel d = load_device(testing::data_path("devices/cairo_like.json"));
    return d;
}

}  // namespace

TEST_CASE("circuit fidelity is the calibrated product") {
    DeviceModel dev = cairo();
    dev.f_1q.assign(dev.chain_length, 0.999);
    for (auto& [pair, f] : dev.f_2q) f = 0.99;
    dev.f_meas.assign(dev.chain_length, 0.98);

    Circuit c(2);
    c.push(Gate::cx(0, 1));
    c.push(Gate::cx(1, 0));
    c.push(Gate::sx(0));
    c.push(Gate::sx(1));
    c.push(Gate::sx(0));
    c.push(Gate::measure());
    const double expect = 0.99 * 0.99 * 0.999 * 0.999 * 0.999 * 0.98 * 0.98;
    CHECK(circuit_fidelity(c, dev) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(circuit_fidelity(c, dev) == doctest::Approx(0.93847).epsilon(1e-4));

    CHECK(circuit_fidelity(Circuit(3), dev) == 1.0);

    // A DD X pulse multiplies by f_1q; RZ and DELAY are free.
    Circuit padded = c;
    padded.gates.pop_back();
    padded.push(Gate::rz(0, 1.0));
    padded.push(Gate::delay(0, 500));
    padded.push(Gate::x(0));
    padded.push(Gate::measure());
    CHECK(circuit_fidelity(padded, dev) ==
          doctest::Approx(expect * 0.999).epsilon(1e-12));
}

TEST_CASE("circuit fidelity strictly decreases with lossy gates") {
    Rng rng(14);
    Circuit c = testing::random_native_circuit(rng, 3, 20, cairo());
    double f = circuit_fidelity(c, cairo());
    for (int i = 0; i < 5; ++i) {
        c.push(Gate::x(static_cast<uint32_t>(rng.below(3))));
        const double f2 = circuit_fidelity(c, cairo());
        CHECK(f2 < f);
        f = f2;
    }
}

TEST_CASE("normalized metrics") {
    const auto [nar, nsp] = normalized_metrics(0.50, 0.25, 0.9751, 0.9747);
    CHECK(nar == doctest::Approx(0.50 / 0.9751).epsilon(1e-12));
    CHECK(nsp == doctest::Approx(0.25 / 0.9747).epsilon(1e-12));
    CHECK(normalized_metrics(0.7, 0.1, 0.7, 0.5).first == doctest::Approx(1.0));
    CHECK(normalized_metrics(0.7, 0.0, 0.7, 0.5).second == 0.0);
    CHECK_THROWS_AS(normalized_metrics(0.5, 0.5, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("metrics record enforces the delta identity") {
    const MetricsRecord r = MetricsRecord::make(0.60, 0.687, 0.5, 0.52, 0.9, 10.0, 4, "dev",
                                                "CX_IMPL", "CPMG", "OPT3");
    CHECK(r.delta_nar == doctest::Approx(0.087).epsilon(1e-12));
    const auto [dn, ds] = dd_deltas(r);
    CHECK(dn == doctest::Approx(0.087).epsilon(1e-12));
    CHECK(ds == doctest::Approx(0.02).epsilon(1e-12));

    MetricsRecord bad = r;
    bad.delta_nar = 0.5;
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);

    // Negative sign when DD hurts.
    const MetricsRecord worse =
        MetricsRecord::make(0.8, 0.7, 0.5, 0.5, 0.9, 10.0, 4, "dev", "CX_IMPL", "CPMG", "OPT1");
    CHECK(worse.delta_nar == doctest::Approx(-0.1));
}

TEST_CASE("emsr counts strict improvements only") {
    CHECK(emsr({0.1, -0.05, 0.2, 0.0}) == 50.0);
    CHECK(emsr({0.1, 0.3}) == 100.0);
    CHECK(emsr({0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(emsr({}), std::invalid_argument);
    // Complement identity for zero-free lists.
    const std::vector<double> d = {0.4, -0.2, 0.7, -0.1, 0.05};
    std::vector<double> neg;
    for (double x : d) neg.push_back(-x);
    CHECK(emsr(d) + emsr(neg) == 100.0);
}

TEST_CASE("perfect and degenerate fits") {
    const std::vector<double> xs = {0.0, 1.0, 2.0};
    const FitResult line = linear_fit(xs, std::vector<double>{1.0, 3.0, 5.0});
    CHECK(line.slope == 2.0);
    CHECK(line.intercept == 1.0);
    CHECK(line.c_r == 1.0);
    CHECK(line.p_value == 0.0);

    const FitResult hat = linear_fit(xs, std::vector<double>{0.0, 1.0, 0.0});
    CHECK(hat.slope == 0.0);
    CHECK(hat.c_r == 0.0);

    const FitResult negline = linear_fit(xs, std::vector<double>{5.0, 3.0, 1.0});
    CHECK(negline.c_r == -1.0);
    CHECK(negline.p_value == 0.0);

    CHECK_THROWS_AS(linear_fit(std::vector<double>{1.0, 1.0, 1.0}, xs), std::invalid_argument);
    CHECK_THROWS_AS(linear_fit(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("fit invariances") {
    Rng rng(606);
    std::vector<double> xs(12), ys(12);
    for (size_t i = 0; i < xs.size(); ++i) {
        xs[i] = rng.uniform(0.0, 10.0);
        ys[i] = 0.7 * xs[i] + rng.uniform(-1.0, 1.0);
    }
    const FitResult base = linear_fit(xs, ys);

    // Point order must not matter.
    std::vector<double> xs2 = xs, ys2 = ys;
    std::swap(xs2[0], xs2[7]);
    std::swap(ys2[0], ys2[7]);
    const FitResult shuffled = linear_fit(xs2, ys2);
    CHECK(shuffled.slope == doctest::Approx(base.slope).epsilon(1e-12));
    CHECK(shuffled.c_r == doctest::Approx(base.c_r).epsilon(1e-12));

    // Positive scaling of ys scales the slope, leaves c_r and p alone.
    std::vector<double> scaled;
    for (double y : ys) scaled.push_back(3.5 * y);
    const FitResult up = linear_fit(xs, scaled);
    CHECK(up.slope == doctest::Approx(3.5 * base.slope).epsilon(1e-12));
    CHECK(up.c_r == doctest::Approx(base.c_r).epsilon(1e-12));
    CHECK(up.p_value == doctest::Approx(base.p_value).epsilon(1e-12));

    // Negative scaling flips the correlation sign.
    std::vector<double> flipped;
    for (double y : ys) flipped.push_back(-y);
    const FitResult down = linear_fit(xs, flipped);
    CHECK(down.c_r == doctest::Approx(-base.c_r).epsilon(1e-12));
    CHECK(std::fabs(down.c_r) == doctest::Approx(std::fabs(base.c_r)).epsilon(1e-12));
}

TEST_CASE("df = 8 critical correlation gives p near 0.05") {
    const auto [xs, ys] = testing::data_with_correlation(0.6319, 10);
    const FitResult fit = linear_fit(xs, ys);
    CHECK(fit.c_r == doctest::Approx(0.6319).epsilon(1e-9));
    CHECK(fit.p_value == doctest::Approx(0.050).epsilon(0.04));  // within 0.002 absolute
    CHECK(std::fabs(fit.p_value - 0.050) <= 0.002);
}

TEST_CASE("p-values agree with the quadrature oracle") {
    // Reference (df, t) pairs; expected p from independent integration
    // (closed forms for df = 1, 2).
    const std::pair<double, double> refs[] = {{1.0, 1.0},  {2.0, 1.4142135623730951},
                                              {4.0, 2.776}, {6.0, 1.0},
                                              {8.0, 2.306}, {12.0, 3.5}};
    for (const auto& [df, t] : refs) {
        const double oracle = testing::t_two_sided_p_oracle(t, df);
        const double ours = student_t_two_sided_p(t, df);
        CHECK(std::fabs(ours - oracle) <= 1e-6);
    }
    // Exact anchors.
    CHECK(student_t_two_sided_p(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(student_t_two_sided_p(std::sqrt(2.0), 2.0) ==
          doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(student_t_two_sided_p(0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("incomplete beta sanity") {
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(1, 1) = x.
    for (double x : {0.1, 0.25, 0.5, 0.9}) {
        CHECK(incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
    }
    // Symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
    CHECK(incomplete_beta(2.5, 4.0, 0.3) ==
          doctest::Approx(1.0 - incomplete_beta(4.0, 2.5, 0.7)).epsilon(1e-12));
}

TEST_CASE("correlation strength bands") {
    CHECK(correlation_strength(0.05) == "very weak");
    CHECK(correlation_strength(-0.2) == "weak");
    CHECK(correlation_strength(0.4) == "moderate");
    CHECK(correlation_strength(-0.7) == "strong");
    CHECK(correlation_strength(0.9) == "very strong");
    CHECK(correlation_strength(1.0) == "very strong");
}
