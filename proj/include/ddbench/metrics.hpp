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
#include <span>
#include <string>
#include <vector>

#include "ddbench/circuit.hpp"
#include "ddbench/device.hpp"

namespace ddbench {

/// Product of calibrated gate and measurement fidelities over the circuit;
/// RZ/ID/DELAY contribute 1, MEASURE multiplies in every qubit's readout
/// fidelity.
double circuit_fidelity(const Circuit& circuit, const DeviceModel& device);

/// (NAR, NSP) = (r_eps / r0, p_eps / p0); values above 1 are legal. Throws
/// on a zero baseline.
std::pair<double, double> normalized_metrics(double r_eps, double p_eps, double r0, double p0);

/// One baseline-vs-DD comparison row. delta_* = *_dd - *_b is enforced at
/// construction.
struct MetricsRecord {
    double nar_b = 0.0, nar_dd = 0.0, nsp_b = 0.0, nsp_dd = 0.0;
    double delta_nar = 0.0, delta_nsp = 0.0;
    double fq = 1.0;       // baseline transpiled-circuit fidelity
    double log_tau = 0.0;  // ln(tau / dt)
    uint32_t n_qubits = 0;
    std::string device, style, sequence, preset;

    static MetricsRecord make(double nar_b, double nar_dd, double nsp_b, double nsp_dd, double fq,
                              double log_tau, uint32_t n_qubits, std::string device,
                              std::string style, std::string sequence, std::string preset);
    void check() const;  // throws if the delta identity is violated beyond 1e-12
};

std::pair<double, double> dd_deltas(const MetricsRecord& record);

/// Percentage of strictly positive entries; zero counts as failure.
double emsr(const std::vector<double>& deltas);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double c_r = 0.0;
    double p_value = 1.0;
    size_t n_points = 0;
};

/// Ordinary least squares with Pearson correlation and the two-sided
/// p-value of the null hypothesis of no correlation (Student t with n-2
/// degrees of freedom). Needs n >= 3 and non-constant xs.
FitResult linear_fit(std::span<const double> xs, std::span<const double> ys);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of Student's t distribution.
double student_t_two_sided_p(double t, double df);

/// Correlation-strength band of |c_r|: very weak [0,0.2), weak [0.2,0.4),
/// moderate [0.4,0.7), strong [0.7,0.9), very strong [0.9,1]. Boundaries go
/// to the upper band.
std::string_view correlation_strength(double c_r);

}  // namespace ddbench
