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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ddbench/circuit.hpp"
#include "ddbench/device.hpp"
#include "ddbench/qaoa.hpp"
#include "ddbench/schedule.hpp"
#include "ddbench/unitary.hpp"

namespace ddbench {

struct NoiseConfig {
    bool enable_t1t2 = true;
    bool enable_detuning = true;
    bool enable_gate_error = true;
    bool enable_readout = true;
    uint32_t detuning_samples = 16;  // quasi-static ensemble size S
    uint64_t rng_seed = 0;
    /// Overrides the random per-qubit detuning draw with one fixed value
    /// (rad per dt) on every qubit; used by the analytic echo checks.
    std::optional<double> fixed_detuning;
};

struct RunResult {
    Counts counts;
    uint64_t shots = 0;
    double expectation_value = 0.0;  // F; NaN until graded against a CostSpec
    double approx_ratio = 0.0;       // r
    double success_prob = 0.0;       // sp
    int64_t tau_dt = 0;
    double fq = 1.0;                 // calibrated circuit fidelity product
    std::string engine;              // "ideal", "density" or "trajectory"
};

enum class ChannelKind { AD, PD, DEPOL1, DEPOL2 };

/// Kraus operator set for the requested channel at strength p; completeness
/// sum K^dag K = I holds to 1e-12. Depolarizing sets are in Pauli form.
std::vector<CMatrix> kraus_channels(ChannelKind kind, double p);

/// Depolarizing strength reproducing average gate fidelity f on d = 2^k
/// dimensions: p = (1 - f) d / (d/2) ... concretely 2(1-f) for one qubit and
/// (4/3)(1-f) for two (see the channel unit tests for the re-derivation).
double depolarizing_p_from_fidelity(double fidelity, uint32_t num_qubits);

/// Exact final statevector (MEASURE ignored, DELAY = identity); n <= 12.
std::vector<cplx> statevector_of(const Circuit& circuit);
std::vector<double> ideal_probabilities(const Circuit& circuit);

/// Seeded sampling of the noise-free distribution.
Counts simulate_ideal(const Circuit& circuit, uint64_t shots, uint64_t seed);

/// Density matrix with closed-form local channel application. Qubit 0 is the
/// most significant bit of the basis index.
class DensityMatrix {
  public:
    explicit DensityMatrix(uint32_t n);

    uint32_t num_qubits() const { return n_; }
    size_t dim() const { return dim_; }
    const std::vector<cplx>& data() const { return rho_; }

    void apply_1q(uint32_t q, const CMatrix& u);
    void apply_2q(uint32_t a, uint32_t b, const CMatrix& u);
    void apply_phase(uint32_t q, double angle);  // RZ(angle)
    void apply_kraus_1q(uint32_t q, const std::vector<CMatrix>& kraus);
    void amplitude_damp(uint32_t q, double p);
    void phase_damp(uint32_t q, double p);
    void depolarize_1q(uint32_t q, double p);
    void depolarize_2q(uint32_t a, uint32_t b, double p);

    double trace_real() const;
    std::vector<double> probabilities() const;

  private:
    uint32_t n_;
    size_t dim_;
    std::vector<cplx> rho_;
    std::vector<cplx> scratch_;
};

/// Advances a density matrix through one timed instruction stream sample
/// with fixed per-qubit detunings; exposed for the channel-level tests.
/// on_step, when set, runs after every instruction.
DensityMatrix evolve_density(const Schedule& schedule, const DeviceModel& device,
                             const NoiseConfig& noise, const std::vector<double>& detuning,
                             const std::function<void(const DensityMatrix&)>& on_step = {});

/// Mean output distribution over the detuning ensemble (readout flips not
/// applied; those act on sampled bitstrings).
std::vector<double> noisy_distribution(const Schedule& schedule, const DeviceModel& device,
                                       const NoiseConfig& noise);

/// Timed noisy execution. Density-matrix engine up to 10 qubits; 11-12
/// qubits fall back to per-trajectory statevector unraveling with the same
/// channel semantics (one trajectory per shot, flagged in `engine`).
/// expectation/ratio/success stay NaN; grade against a CostSpec with
/// evaluate_run.
RunResult simulate_noisy(const Schedule& schedule, const DeviceModel& device,
                         const NoiseConfig& noise, uint64_t shots, uint64_t seed);

/// Fills F, r and sp from the counts, un-permuting physical bitstrings when
/// a swap-network permutation is given.
void evaluate_run(RunResult& result, const CostSpec& spec,
                  const std::vector<uint32_t>* phys_of_logical = nullptr);

}  // namespace ddbench
