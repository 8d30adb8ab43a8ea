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

#include "ddbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddbench {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;
    constexpr int kMaxIter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete_beta: continued fraction failed to converge");
}

}  // namespace

double circuit_fidelity(const Circuit& circuit, const DeviceModel& device) {
    double f = 1.0;
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::RZ:
            case GateKind::ID:
            case GateKind::DELAY:
                break;
            case GateKind::X:
            case GateKind::SX:
            case GateKind::Y:
                f *= device.fid_1q(g.qubits[0]);
                break;
            case GateKind::CX:
            case GateKind::ECR:
            case GateKind::CZ:
                f *= device.fid_2q(g.qubits[0], g.qubits[1]);
                break;
            case GateKind::MEASURE:
                for (uint32_t q = 0; q < circuit.num_qubits; ++q) f *= device.fid_meas(q);
                break;
            default:
                throw std::invalid_argument("circuit_fidelity: no calibrated fidelity for kind " +
                                            std::string(kind_name(g.kind)));
        }
    }
    return f;
}

std::pair<double, double> normalized_metrics(double r_eps, double p_eps, double r0, double p0) {
    if (r0 == 0.0 || p0 == 0.0) {
        throw std::invalid_argument("normalized_metrics: zero noise-free baseline");
    }
    return {r_eps / r0, p_eps / p0};
}

MetricsRecord MetricsRecord::make(double nar_b, double nar_dd, double nsp_b, double nsp_dd,
                                  double fq, double log_tau, uint32_t n_qubits, std::string device,
                                  std::string style, std::string sequence, std::string preset) {
    MetricsRecord r;
    r.nar_b = nar_b;
    r.nar_dd = nar_dd;
    r.nsp_b = nsp_b;
    r.nsp_dd = nsp_dd;
    r.delta_nar = nar_dd - nar_b;
    r.delta_nsp = nsp_dd - nsp_b;
    r.fq = fq;
    r.log_tau = log_tau;
    r.n_qubits = n_qubits;
    r.device = std::move(device);
    r.style = std::move(style);
    r.sequence = std::move(sequence);
    r.preset = std::move(preset);
    r.check();
    return r;
}

void MetricsRecord::check() const {
    if (std::fabs(delta_nar - (nar_dd - nar_b)) > 1e-12 ||
        std::fabs(delta_nsp - (nsp_dd - nsp_b)) > 1e-12) {
        throw std::invalid_argument("MetricsRecord: delta fields inconsistent with ratios");
    }
}

std::pair<double, double> dd_deltas(const MetricsRecord& record) {
    return {record.nar_dd - record.nar_b, record.nsp_dd - record.nsp_b};
}

double emsr(const std::vector<double>& deltas) {
    if (deltas.empty()) throw std::invalid_argument("emsr: empty delta list");
    size_t wins = 0;
    for (double d : deltas) {
        if (d > 0.0) ++wins;
    }
    return 100.0 * static_cast<double>(wins) / static_cast<double>(deltas.size());
}

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete_beta: a, b must be > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_two_sided_p: df must be > 0");
    if (std::isnan(t)) return 1.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("linear_fit: length mismatch");
    const size_t n = xs.size();
    if (n < 3) throw std::invalid_argument("linear_fit: need at least 3 points");

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate xs (all equal)");

    FitResult fit;
    fit.n_points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.c_r = 0.0;  // constant ys: no linear association
        fit.p_value = 1.0;
        return fit;
    }
    fit.c_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    if (std::fabs(fit.c_r) >= 1.0) {
        fit.p_value = 0.0;
        return fit;
    }
    const double df = static_cast<double>(n - 2);
    const double t = fit.c_r * std::sqrt(df / (1.0 - fit.c_r * fit.c_r));
    fit.p_value = student_t_two_sided_p(t, df);
    return fit;
}

std::string_view correlation_strength(double c_r) {
    const double a = std::fabs(c_r);
    if (a >= 0.9) return "very strong";
    if (a >= 0.7) return "strong";
    if (a >= 0.4) return "moderate";
    if (a >= 0.2) return "weak";
    return "very weak";
}

}  // namespace ddbench
