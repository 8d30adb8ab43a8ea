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

#include "ddbench/noise.hpp"
#include "ddbench/schedule.hpp"
#include "test_support.hpp"

using namespace ddbench;

namespace {

const DeviceModel& cairo() {
    static const DeviceModel d = load_device(testing::data_path("devices/cairo_like.json"));
    return d;
}

NoiseConfig all_off() {
    NoiseConfig cfg;
    cfg.enable_t1t2 = false;
    cfg.enable_detuning = false;
    cfg.enable_gate_error = false;
    cfg.enable_readout = false;
    cfg.detuning_samples = 1;
    return cfg;
}

double channel_trace_formula_favg(const std::vector<CMatrix>& kraus, size_t dim) {
    // F_avg = (sum_k |tr K_k|^2 + d) / (d^2 + d)
    double acc = 0.0;
    for (const CMatrix& k : kraus) {
        cplx tr(0.0, 0.0);
        for (size_t i = 0; i < k.dim; ++i) tr += k.at(i, i);
        acc += std::norm(tr);
    }
    const double d = static_cast<double>(dim);
    return (acc + d) / (d * d + d);
}

double channel_monte_carlo_favg(const std::vector<CMatrix>& kraus, size_t dim, Rng& rng,
                                int samples) {
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::vector<cplx> psi(dim);
        double norm2 = 0.0;
        for (auto& a : psi) {
            a = cplx(rng.normal(), rng.normal());
            norm2 += std::norm(a);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& a : psi) a *= inv;
        double fid = 0.0;
        for (const CMatrix& k : kraus) {
            cplx amp(0.0, 0.0);
            for (size_t r = 0; r < dim; ++r) {
                cplx row(0.0, 0.0);
                for (size_t c = 0; c < dim; ++c) row += k.at(r, c) * psi[c];
                amp += std::conj(psi[r]) * row;
            }
            fid += std::norm(amp);
        }
        acc += fid;
    }
    return acc / samples;
}

}  // namespace

TEST_CASE("Kraus completeness for every channel kind") {
    Rng rng(3);
    for (auto kind : {ChannelKind::AD, ChannelKind::PD, ChannelKind::DEPOL1, ChannelKind::DEPOL2}) {
        for (int i = 0; i < 10; ++i) {
            const double p = rng.uniform();
            const std::vector<CMatrix> ks = kraus_channels(kind, p);
            REQUIRE(!ks.empty());
            const size_t d = ks[0].dim;
            CMatrix sum(d);
            for (const CMatrix& k : ks) {
                const CMatrix kk = matmul(dagger(k), k);
                for (size_t j = 0; j < kk.a.size(); ++j) sum.a[j] += kk.a[j];
            }
            CHECK(max_abs_diff(sum, CMatrix::identity(d)) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(kraus_channels(ChannelKind::AD, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(kraus_channels(ChannelKind::AD, -0.1), std::invalid_argument);
}

TEST_CASE("amplitude damping limits") {
    // p = 0: identity channel.
    DensityMatrix rho0(1);
    rho0.apply_1q(0, gate_matrix_1q(GateKind::H));
    const std::vector<cplx> before = rho0.data();
    rho0.amplitude_damp(0, 0.0);
    for (size_t i = 0; i < before.size(); ++i) CHECK(std::abs(rho0.data()[i] - before[i]) < 1e-15);

    // p = 1 after X on |0>: full relaxation back to |0>.
    DensityMatrix rho1(1);
    rho1.apply_1q(0, gate_matrix_1q(GateKind::X));
    rho1.amplitude_damp(0, 1.0);
    CHECK(rho1.probabilities()[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form channels match their Kraus-sum form") {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const double p = rng.uniform();
        // Prepare the same mixed 2-qubit state in two engines.
        auto prepare = [&](DensityMatrix& rho, uint64_t seed) {
            Rng prep(seed);
            rho.apply_1q(0, testing::random_unitary_2x2(prep));
            rho.apply_1q(1, testing::random_unitary_2x2(prep));
            rho.apply_2q(0, 1, gate_matrix_2q(GateKind::CX));
            rho.amplitude_damp(0, 0.3);  // some impurity
        };
        DensityMatrix a(2), b(2);
        prepare(a, 1000 + trial);
        prepare(b, 1000 + trial);

        SUBCASE("amplitude damping") {
            a.amplitude_damp(0, p);
            b.apply_kraus_1q(0, kraus_channels(ChannelKind::AD, p));
        }
        SUBCASE("phase damping") {
            a.phase_damp(1, p);
            b.apply_kraus_1q(1, kraus_channels(ChannelKind::PD, p));
        }
        SUBCASE("single-qubit depolarizing") {
            a.depolarize_1q(0, p);
            b.apply_kraus_1q(0, kraus_channels(ChannelKind::DEPOL1, p));
        }
        for (size_t i = 0; i < a.data().size(); ++i) {
            CHECK(std::abs(a.data()[i] - b.data()[i]) < 1e-12);
        }
    }
}

TEST_CASE("two-qubit depolarizing matches its definition") {
    Rng rng(505);
    for (int trial = 0; trial < 5; ++trial) {
        const double p = rng.uniform();
        DensityMatrix rho(3);
        rho.apply_1q(0, testing::random_unitary_2x2(rng));
        rho.apply_1q(1, testing::random_unitary_2x2(rng));
        rho.apply_1q(2, testing::random_unitary_2x2(rng));
        rho.apply_2q(0, 2, gate_matrix_2q(GateKind::CX));
        const std::vector<cplx> before = rho.data();
        rho.depolarize_2q(0, 2, p);

        // Expected: (1-p) rho + p/4 * (I_pair (x) tr_pair rho), computed by
        // direct index arithmetic over the raw data.
        const size_t dim = 8;
        const size_t ma = 1 << 2, mb = 1 << 0;  // qubits 0 and 2 of 3
        for (size_t r = 0; r < dim; ++r) {
            for (size_t c = 0; c < dim; ++c) {
                cplx expect = (1.0 - p) * before[r * dim + c];
                const bool same_pair_bits = ((r & ma) == (c & ma)) && ((r & mb) == (c & mb));
                if (same_pair_bits) {
                    cplx partial(0.0, 0.0);
                    for (size_t ia = 0; ia < 2; ++ia) {
                        for (size_t ib = 0; ib < 2; ++ib) {
                            const size_t rr = (r & ~(ma | mb)) | (ia ? ma : 0) | (ib ? mb : 0);
                            const size_t cc = (c & ~(ma | mb)) | (ia ? ma : 0) | (ib ? mb : 0);
                            partial += before[rr * dim + cc];
                        }
                    }
                    expect += 0.25 * p * partial;
                }
                CHECK(std::abs(rho.data()[r * dim + c] - expect) < 1e-12);
            }
        }
    }
}

TEST_CASE("depolarizing strengths reproduce calibrated average gate fidelities") {
    Rng rng(606);
    for (double f : {0.985, 0.99, 0.999}) {
        const auto k1 = kraus_channels(ChannelKind::DEPOL1, depolarizing_p_from_fidelity(f, 1));
        CHECK(channel_trace_formula_favg(k1, 2) == doctest::Approx(f).epsilon(1e-12));
        CHECK(channel_monte_carlo_favg(k1, 2, rng, 20000) == doctest::Approx(f).epsilon(2e-3));

        const auto k2 = kraus_channels(ChannelKind::DEPOL2, depolarizing_p_from_fidelity(f, 2));
        CHECK(channel_trace_formula_favg(k2, 4) == doctest::Approx(f).epsilon(1e-12));
        CHECK(channel_monte_carlo_favg(k2, 4, rng, 20000) == doctest::Approx(f).epsilon(2e-3));
    }
}

TEST_CASE("coherence decays by 1/e after idling for exactly T2") {
    DeviceModel dev = cairo();
    dev.dt_ns = 1.0;
    dev.t1_ns.assign(dev.chain_length, 1e30);  // effectively no relaxation
    dev.t2_ns.assign(dev.chain_length, 10000.0);
    const int64_t tau = 10000;

    Schedule s;
    s.device_name = dev.name;
    s.num_qubits = 1;
    const int64_t d = dev.single_pulse_dt;
    s.instructions = {
        {Gate::rz(0, 1.5707963267948966), 0, 0, 0},
        {Gate::sx(0), 0, d, 1},
        {Gate::rz(0, 1.5707963267948966), d, 0, 2},
        {Gate::delay(0, tau), d, tau, 3},
    };
    s.total_dt = d + tau;

    NoiseConfig cfg = all_off();
    cfg.enable_t1t2 = true;
    const DensityMatrix rho = evolve_density(s, dev, cfg, {0.0});
    const double coherence = std::abs(rho.data()[1]);  // rho(0, 1)
    CHECK(coherence == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("static detuning dephases |+> and CPMG refocuses it exactly") {
    const DeviceModel& dev = cairo();
    const int64_t window = 1000;
    const Schedule s = testing::make_hahn_schedule(dev, window);

    NoiseConfig cfg = all_off();
    cfg.enable_detuning = true;
    cfg.fixed_detuning = 3.14159265358979323846 / static_cast<double>(window);
    cfg.detuning_samples = 1;

    const std::vector<double> base = noisy_distribution(s, dev, cfg);
    CHECK(base[0] <= 1e-9);  // fully dephased away from |+>
    CHECK(base[1] == doctest::Approx(1.0).epsilon(1e-9));

    const Schedule padded = insert_dd(s, DDSequence::CPMG, dev);
    const std::vector<double> echoed = noisy_distribution(padded, dev, cfg);
    CHECK(echoed[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("echo monotonicity: CPMG never hurts under pure detuning") {
    Rng rng(808);
    const DeviceModel& dev = cairo();
    for (int trial = 0; trial < 12; ++trial) {
        const int64_t window = 2 * dev.single_pulse_dt + static_cast<int64_t>(rng.below(3000));
        DeviceModel d = dev;
        d.detuning_sigma = rng.uniform(1e-4, 3e-3);
        const Schedule s = testing::make_hahn_schedule(d, window);
        NoiseConfig cfg = all_off();
        cfg.enable_detuning = true;
        cfg.detuning_samples = 32;
        cfg.rng_seed = rng.next_u64();

        const double base = noisy_distribution(s, d, cfg)[0];
        const double echoed = noisy_distribution(insert_dd(s, DDSequence::CPMG, d), d, cfg)[0];
        CHECK(echoed >= base - 1e-12);
    }
}

TEST_CASE("DD pulses only add error when there is nothing to refocus") {
    Rng rng(909);
    const DeviceModel& dev = cairo();
    for (int trial = 0; trial < 12; ++trial) {
        const int64_t window = 2 * dev.single_pulse_dt + static_cast<int64_t>(rng.below(3000));
        const Schedule s = testing::make_hahn_schedule(dev, window);
        NoiseConfig cfg = all_off();
        cfg.enable_gate_error = true;

        const double base = noisy_distribution(s, dev, cfg)[0];
        const double with_dd = noisy_distribution(insert_dd(s, DDSequence::CPMG, dev), dev, cfg)[0];
        CHECK(with_dd <= base + 1e-12);
    }
}

TEST_CASE("all noise disabled reduces to the ideal distribution") {
    Rng rng(111);
    const PortfolioInstance inst = make_instance(3, 77);
    const QaoaCircuit qc = build_qaoa(inst, {{0.6}, {0.4}}, DecompositionStyle::CX_IMPL);
    const MappedCircuit mapped = swap_network_map(qc, cairo());
    const Circuit lowered = lower_to_basis(mapped.circuit, cairo());
    const Schedule s = alap_schedule(lowered, cairo());

    const uint64_t shots = 30000;
    const RunResult res = simulate_noisy(s, cairo(), all_off(), shots, 9);
    CHECK(res.engine == "density");
    const std::vector<double> ideal = ideal_probabilities(schedule_as_circuit(s));
    double tv = 0.0;
    for (size_t b = 0; b < ideal.size(); ++b) {
        std::string bits(3, '0');
        for (uint32_t i = 0; i < 3; ++i) {
            if ((b >> (2 - i)) & 1) bits[i] = '1';
        }
        const auto it = res.counts.find(bits);
        const double sampled =
            it == res.counts.end() ? 0.0 : static_cast<double>(it->second) / shots;
        tv += 0.5 * std::abs(sampled - ideal[b]);
    }
    CHECK(tv <= 5.0 * std::sqrt(std::log(8.0) / static_cast<double>(shots)));
}

TEST_CASE("H layer sampling stays within 5 sigma of uniform") {
    Circuit c(2);
    c.push(Gate::h(0));
    c.push(Gate::h(1));
    c.push(Gate::measure());
    const uint64_t shots = 30000;
    const Counts counts = simulate_ideal(c, shots, 21);
    const double sigma = std::sqrt(shots * 0.25 * 0.75);
    for (const char* bits : {"00", "01", "10", "11"}) {
        const auto it = counts.find(bits);
        REQUIRE(it != counts.end());
        CHECK(std::abs(static_cast<double>(it->second) - 7500.0) <= 5.0 * sigma);
    }
}

TEST_CASE("single X gives all shots in 1") {
    Circuit c(1);
    c.push(Gate::x(0));
    c.push(Gate::measure());
    const Counts counts = simulate_ideal(c, 500, 3);
    REQUIRE(counts.size() == 1);
    CHECK(counts.at("1") == 500);
}

TEST_CASE("sampled expectation tracks the exact statevector expectation") {
    const PortfolioInstance inst = make_instance(2, 31);
    const CostSpec spec = cost_spec_of(inst);
    const QaoaParams params = grid_search_params(spec);
    const Circuit circuit = build_qaoa_rzz(spec, params);

    const uint64_t shots = 30000;
    const Counts counts = simulate_ideal(circuit, shots, 8);
    const double sampled = expectation(counts, spec);
    const double exact = ideal_expectation(spec, params);

    // Sample standard error from the exact outcome distribution.
    const std::vector<double> probs = ideal_probabilities(build_qaoa_rzz(spec, params, false));
    double second = 0.0;
    for (size_t b = 0; b < probs.size(); ++b) {
        std::string bits(2, '0');
        for (uint32_t i = 0; i < 2; ++i) {
            if ((b >> (1 - i)) & 1) bits[i] = '1';
        }
        const double v = cost_value(bits, spec);
        second += probs[b] * v * v;
    }
    const double stderr_f = std::sqrt((second - exact * exact) / static_cast<double>(shots));
    CHECK(std::abs(sampled - exact) <= 3.0 * stderr_f + 1e-12);
}

TEST_CASE("trace preservation and positivity through a noisy run") {
    Rng rng(222);
    const DeviceModel& dev = cairo();
    const Circuit c = testing::random_native_circuit(rng, 3, 60, dev);
    Circuit with_measure = c;
    with_measure.push(Gate::measure());
    const Schedule s = insert_dd(alap_schedule(with_measure, dev), DDSequence::XY4, dev);

    NoiseConfig cfg;
    cfg.detuning_samples = 1;
    cfg.rng_seed = 5;
    Rng det(17);
    std::vector<double> detuning(3);
    for (auto& dd : detuning) dd = 5e-4 * det.normal();

    size_t steps = 0;
    DensityMatrix rho = evolve_density(s, dev, cfg, detuning, [&](const DensityMatrix& r) {
        ++steps;
        CHECK(std::abs(r.trace_real() - 1.0) <= 1e-9);
    });
    CHECK(steps >= s.instructions.size());
    CHECK(std::abs(rho.trace_real() - 1.0) <= 1e-9);

    CMatrix m(rho.dim());
    m.a = rho.data();
    CHECK(testing::min_hermitian_eigenvalue(m) >= -1e-9);
}

TEST_CASE("identical configuration and seed give identical results") {
    const PortfolioInstance inst = make_instance(3, 5);
    const QaoaCircuit qc = build_qaoa(inst, {{0.5}, {0.3}}, DecompositionStyle::CX_IMPL);
    const MappedCircuit mapped = swap_network_map(qc, cairo());
    const Schedule s = alap_schedule(lower_to_basis(mapped.circuit, cairo()), cairo());

    NoiseConfig cfg;
    cfg.detuning_samples = 4;
    const RunResult a = simulate_noisy(s, cairo(), cfg, 5000, 1234);
    const RunResult b = simulate_noisy(s, cairo(), cfg, 5000, 1234);
    CHECK(a.counts == b.counts);
    const RunResult c = simulate_noisy(s, cairo(), cfg, 5000, 1235);
    CHECK(a.counts != c.counts);
}

TEST_CASE("schedules with non-native kinds are rejected") {
    Schedule s;
    s.device_name = "cairo-like";
    s.num_qubits = 1;
    s.instructions = {{Gate::h(0), 0, 112, 0}};
    s.total_dt = 112;
    CHECK_THROWS_WITH_AS(simulate_noisy(s, cairo(), all_off(), 10, 1),
                         doctest::Contains("non-native"), std::invalid_argument);
    Circuit big(13);
    CHECK_THROWS_AS(simulate_noisy(alap_schedule(big, cairo()), cairo(), all_off(), 10, 1),
                    std::invalid_argument);
}

TEST_CASE("trajectory engine takes over above 10 qubits") {
    Circuit c(11);
    c.push(Gate::x(0));
    c.push(Gate::measure());
    const Schedule s = alap_schedule(c, cairo());
    const RunResult res = simulate_noisy(s, cairo(), all_off(), 64, 3);
    CHECK(res.engine == "trajectory");
    REQUIRE(res.counts.size() == 1);
    CHECK(res.counts.begin()->first == "10000000000");
    CHECK(res.counts.begin()->second == 64);
}

TEST_CASE("evaluate_run grades counts against a cost spec") {
    const PortfolioInstance inst = make_instance(2, 1);
    const CostSpec spec = cost_spec_of(inst);
    RunResult res;
    res.counts = {{spec.optimal_bitstrings.front(), 10}};
    res.shots = 10;
    evaluate_run(res, spec);
    CHECK(res.approx_ratio == doctest::Approx(1.0));
    CHECK(res.success_prob == doctest::Approx(1.0));
}
