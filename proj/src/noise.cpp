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

#include "ddbench/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddbench/metrics.hpp"
#include "ddbench/rng.hpp"

namespace ddbench {

namespace {

std::string bits_of_index(size_t index, uint32_t n) {
    std::string s(n, '0');
    for (uint32_t i = 0; i < n; ++i) {
        if ((index >> (n - 1 - i)) & 1) s[i] = '1';
    }
    return s;
}

// --- statevector engine ---------------------------------------------------

struct StateVector {
    uint32_t n;
    std::vector<cplx> amp;

    explicit StateVector(uint32_t nq) : n(nq), amp(size_t{1} << nq, cplx(0.0, 0.0)) {
        amp[0] = 1.0;
    }

    size_t mask(uint32_t q) const { return size_t{1} << (n - 1 - q); }

    void apply_1q(uint32_t q, const CMatrix& u) {
        const size_t m = mask(q);
        const cplx u00 = u.at(0, 0), u01 = u.at(0, 1), u10 = u.at(1, 0), u11 = u.at(1, 1);
        for (size_t b = 0; b < amp.size(); ++b) {
            if (b & m) continue;
            const cplx v0 = amp[b];
            const cplx v1 = amp[b | m];
            amp[b] = u00 * v0 + u01 * v1;
            amp[b | m] = u10 * v0 + u11 * v1;
        }
    }

    void apply_2q(uint32_t a, uint32_t b, const CMatrix& u) {
        const size_t ma = mask(a);
        const size_t mb = mask(b);
        for (size_t base = 0; base < amp.size(); ++base) {
            if (base & (ma | mb)) continue;
            const size_t idx[4] = {base, base | mb, base | ma, base | ma | mb};
            cplx v[4];
            for (int i = 0; i < 4; ++i) v[i] = amp[idx[i]];
            for (int i = 0; i < 4; ++i) {
                cplx acc(0.0, 0.0);
                for (int j = 0; j < 4; ++j) acc += u.at(i, j) * v[j];
                amp[idx[i]] = acc;
            }
        }
    }

    void apply_gate(const Gate& g) {
        if (g.kind == GateKind::MEASURE || g.kind == GateKind::ID || g.kind == GateKind::DELAY) {
            return;
        }
        if (is_two_qubit(g.kind)) {
            apply_2q(g.qubits[0], g.qubits[1], gate_matrix_2q(g.kind, g.angle));
        } else {
            apply_1q(g.qubits[0], gate_matrix_1q(g.kind, g.angle));
        }
    }

    double prob_one(uint32_t q) const {
        const size_t m = mask(q);
        double p = 0.0;
        for (size_t b = 0; b < amp.size(); ++b) {
            if (b & m) p += std::norm(amp[b]);
        }
        return p;
    }

    void renormalize() {
        double norm2 = 0.0;
        for (const cplx& v : amp) norm2 += std::norm(v);
        const double inv = 1.0 / std::sqrt(norm2);
        for (cplx& v : amp) v *= inv;
    }

    // Projects qubit q with K = diag(k0, k1) (or the AD jump operator) and
    // renormalizes.
    void apply_kraus_1q(uint32_t q, const CMatrix& k) {
        apply_1q(q, k);
        renormalize();
    }
};

size_t sample_index(const std::vector<double>& cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min(static_cast<size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> cumulative_of(const std::vector<double>& probs) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += std::max(0.0, probs[i]);
        cdf[i] = acc;
    }
    // Guard against rounding drift in the final bin.
    if (!cdf.empty() && cdf.back() < 1.0) cdf.back() = std::max(cdf.back(), 1.0);
    return cdf;
}

struct IdleParams {
    double p_ad = 0.0;
    double p_pd = 0.0;
};

IdleParams idle_params(const DeviceModel& dev, uint32_t q, int64_t span_dt) {
    IdleParams out;
    const double tau_ns = static_cast<double>(span_dt) * dev.dt_ns;
    out.p_ad = 1.0 - std::exp(-tau_ns / dev.t1_ns[q]);
    const double pure_rate = 1.0 / dev.t2_ns[q] - 0.5 / dev.t1_ns[q];
    out.p_pd = 1.0 - std::exp(-2.0 * tau_ns * std::max(0.0, pure_rate));
    return out;
}

// Shared instruction walk: calls idle(q, span) for every idle segment (gaps
// and DELAYs) and op(gate) for every unitary-bearing instruction, in start
// time order. post() runs once per instruction after its effects.
template <typename IdleFn, typename OpFn, typename PostFn>
void walk_schedule(const Schedule& sched, IdleFn&& idle, OpFn&& op, PostFn&& post) {
    std::vector<int64_t> last_end(sched.num_qubits, 0);
    for (const TimedInstruction& ti : sched.instructions) {
        const Gate& g = ti.gate;
        std::vector<uint32_t> qs;
        if (g.kind == GateKind::MEASURE) {
            qs.resize(sched.num_qubits);
            for (uint32_t q = 0; q < sched.num_qubits; ++q) qs[q] = q;
        } else {
            qs = g.qubits;
        }
        for (uint32_t q : qs) {
            const int64_t gap = ti.start_dt - last_end[q];
            if (gap > 0) idle(q, gap);
        }
        if (g.kind == GateKind::DELAY) {
            idle(g.qubits[0], g.delay_dt);
        } else if (g.kind != GateKind::MEASURE && g.kind != GateKind::ID) {
            op(g);
        }
        // Zero-duration frames may sort after a DELAY sharing their start;
        // the busy horizon never moves backwards.
        for (uint32_t q : qs) last_end[q] = std::max(last_end[q], ti.start_dt + ti.duration_dt);
        post();
    }
}

template <typename IdleFn, typename OpFn>
void walk_schedule(const Schedule& sched, IdleFn&& idle, OpFn&& op) {
    walk_schedule(sched, std::forward<IdleFn>(idle), std::forward<OpFn>(op), [] {});
}

void check_schedule_kind(const Gate& g, const DeviceModel& dev) {
    switch (g.kind) {
        case GateKind::RZ:
        case GateKind::X:
        case GateKind::SX:
        case GateKind::Y:
            return;
        case GateKind::CX:
            if (dev.native_2q == Native2Q::CX) return;
            break;
        case GateKind::ECR:
            if (dev.native_2q == Native2Q::ECR) return;
            break;
        default:
            break;
    }
    throw std::invalid_argument("simulate_noisy: schedule contains non-native kind " +
                                std::string(kind_name(g.kind)));
}

Counts sample_counts(const std::vector<double>& probs, uint64_t shots, uint32_t n, Rng& rng,
                     const DeviceModel& dev, bool readout) {
    const std::vector<double> cdf = cumulative_of(probs);
    Counts counts;
    for (uint64_t s = 0; s < shots; ++s) {
        size_t idx = sample_index(cdf, rng.uniform());
        if (readout) {
            for (uint32_t q = 0; q < n; ++q) {
                if (rng.uniform() < dev.readout_flip[q]) idx ^= size_t{1} << (n - 1 - q);
            }
        }
        ++counts[bits_of_index(idx, n)];
    }
    return counts;
}

}  // namespace

// --- channels ---------------------------------------------------------------

std::vector<CMatrix> kraus_channels(ChannelKind kind, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("kraus_channels: p out of [0,1]");
    std::vector<CMatrix> ks;
    switch (kind) {
        case ChannelKind::AD: {
            CMatrix k0(2), k1(2);
            k0.at(0, 0) = 1.0;
            k0.at(1, 1) = std::sqrt(1.0 - p);
            k1.at(0, 1) = std::sqrt(p);
            ks = {k0, k1};
            break;
        }
        case ChannelKind::PD: {
            CMatrix k0(2), k1(2);
            k0.at(0, 0) = 1.0;
            k0.at(1, 1) = std::sqrt(1.0 - p);
            k1.at(1, 1) = std::sqrt(p);
            ks = {k0, k1};
            break;
        }
        case ChannelKind::DEPOL1: {
            const double w0 = std::sqrt(1.0 - 0.75 * p);
            const double w = std::sqrt(0.25 * p);
            CMatrix i2 = CMatrix::identity(2);
            for (auto& v : i2.a) v *= w0;
            ks.push_back(i2);
            for (GateKind pk : {GateKind::X, GateKind::Y}) {
                CMatrix m = gate_matrix_1q(pk);
                for (auto& v : m.a) v *= w;
                ks.push_back(m);
            }
            CMatrix z(2);
            z.at(0, 0) = w;
            z.at(1, 1) = -w;
            ks.push_back(z);
            break;
        }
        case ChannelKind::DEPOL2: {
            const double w0 = std::sqrt(1.0 - 15.0 * p / 16.0);
            const double w = std::sqrt(p / 16.0);
            CMatrix paulis[4];
            paulis[0] = CMatrix::identity(2);
            paulis[1] = gate_matrix_1q(GateKind::X);
            paulis[2] = gate_matrix_1q(GateKind::Y);
            paulis[3] = CMatrix(2);
            paulis[3].at(0, 0) = 1.0;
            paulis[3].at(1, 1) = -1.0;
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    CMatrix m = kron(paulis[a], paulis[b]);
                    const double weight = (a == 0 && b == 0) ? w0 : w;
                    for (auto& v : m.a) v *= weight;
                    ks.push_back(m);
                }
            }
            break;
        }
    }
    return ks;
}

double depolarizing_p_from_fidelity(double fidelity, uint32_t num_qubits) {
    if (num_qubits == 1) return std::clamp(2.0 * (1.0 - fidelity), 0.0, 1.0);
    if (num_qubits == 2) return std::clamp((4.0 / 3.0) * (1.0 - fidelity), 0.0, 1.0);
    throw std::invalid_argument("depolarizing_p_from_fidelity: 1 or 2 qubits only");
}

// --- ideal path -------------------------------------------------------------

std::vector<cplx> statevector_of(const Circuit& circuit) {
    if (circuit.num_qubits > 12) {
        throw std::invalid_argument("statevector_of: more than 12 qubits");
    }
    circuit.validate();
    StateVector sv(circuit.num_qubits);
    for (const Gate& g : circuit.gates) sv.apply_gate(g);
    return std::move(sv.amp);
}

std::vector<double> ideal_probabilities(const Circuit& circuit) {
    const std::vector<cplx> amp = statevector_of(circuit);
    std::vector<double> probs(amp.size());
    for (size_t i = 0; i < amp.size(); ++i) probs[i] = std::norm(amp[i]);
    return probs;
}

Counts simulate_ideal(const Circuit& circuit, uint64_t shots, uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("simulate_ideal: shots must be > 0");
    const std::vector<double> probs = ideal_probabilities(circuit);
    const std::vector<double> cdf = cumulative_of(probs);
    Rng rng(mix_seed(seed, 0x1dea1ULL));
    Counts counts;
    for (uint64_t s = 0; s < shots; ++s) {
        ++counts[bits_of_index(sample_index(cdf, rng.uniform()), circuit.num_qubits)];
    }
    return counts;
}

// --- density matrix engine ---------------------------------------------------

DensityMatrix::DensityMatrix(uint32_t n) : n_(n), dim_(size_t{1} << n), rho_(dim_ * dim_) {
    rho_[0] = 1.0;
}

void DensityMatrix::apply_1q(uint32_t q, const CMatrix& u) {
    const size_t m = size_t{1} << (n_ - 1 - q);
    const cplx u00 = u.at(0, 0), u01 = u.at(0, 1), u10 = u.at(1, 0), u11 = u.at(1, 1);
    // rows: rho <- U rho
    for (size_t r0 = 0; r0 < dim_; ++r0) {
        if (r0 & m) continue;
        cplx* row0 = &rho_[r0 * dim_];
        cplx* row1 = &rho_[(r0 | m) * dim_];
        for (size_t c = 0; c < dim_; ++c) {
            const cplx v0 = row0[c];
            const cplx v1 = row1[c];
            row0[c] = u00 * v0 + u01 * v1;
            row1[c] = u10 * v0 + u11 * v1;
        }
    }
    // columns: rho <- rho U^dag (columns mix with conj(U))
    const cplx c00 = std::conj(u00), c01 = std::conj(u01), c10 = std::conj(u10), c11 = std::conj(u11);
    for (size_t r = 0; r < dim_; ++r) {
        cplx* row = &rho_[r * dim_];
        for (size_t col0 = 0; col0 < dim_; ++col0) {
            if (col0 & m) continue;
            const cplx v0 = row[col0];
            const cplx v1 = row[col0 | m];
            row[col0] = c00 * v0 + c01 * v1;
            row[col0 | m] = c10 * v0 + c11 * v1;
        }
    }
}

void DensityMatrix::apply_2q(uint32_t a, uint32_t b, const CMatrix& u) {
    const size_t ma = size_t{1} << (n_ - 1 - a);
    const size_t mb = size_t{1} << (n_ - 1 - b);
    for (size_t base = 0; base < dim_; ++base) {
        if (base & (ma | mb)) continue;
        const size_t rows[4] = {base, base | mb, base | ma, base | ma | mb};
        for (size_t c = 0; c < dim_; ++c) {
            cplx v[4];
            for (int i = 0; i < 4; ++i) v[i] = rho_[rows[i] * dim_ + c];
            for (int i = 0; i < 4; ++i) {
                cplx acc(0.0, 0.0);
                for (int j = 0; j < 4; ++j) acc += u.at(i, j) * v[j];
                rho_[rows[i] * dim_ + c] = acc;
            }
        }
    }
    for (size_t r = 0; r < dim_; ++r) {
        cplx* row = &rho_[r * dim_];
        for (size_t base = 0; base < dim_; ++base) {
            if (base & (ma | mb)) continue;
            const size_t cols[4] = {base, base | mb, base | ma, base | ma | mb};
            cplx v[4];
            for (int i = 0; i < 4; ++i) v[i] = row[cols[i]];
            for (int i = 0; i < 4; ++i) {
                cplx acc(0.0, 0.0);
                for (int j = 0; j < 4; ++j) acc += std::conj(u.at(i, j)) * v[j];
                row[cols[i]] = acc;
            }
        }
    }
}

void DensityMatrix::apply_phase(uint32_t q, double angle) {
    const size_t m = size_t{1} << (n_ - 1 - q);
    const cplx d0 = std::exp(cplx(0.0, -angle / 2.0));
    const cplx d1 = std::exp(cplx(0.0, angle / 2.0));
    for (size_t r = 0; r < dim_; ++r) {
        const cplx dr = (r & m) ? d1 : d0;
        cplx* row = &rho_[r * dim_];
        for (size_t c = 0; c < dim_; ++c) {
            const cplx dc = (c & m) ? std::conj(d1) : std::conj(d0);
            row[c] *= dr * dc;
        }
    }
}

void DensityMatrix::apply_kraus_1q(uint32_t q, const std::vector<CMatrix>& kraus) {
    scratch_.assign(dim_ * dim_, cplx(0.0, 0.0));
    std::vector<cplx> saved = rho_;
    for (const CMatrix& k : kraus) {
        rho_ = saved;
        apply_1q(q, k);  // unitarity is not assumed anywhere in apply_1q
        for (size_t i = 0; i < rho_.size(); ++i) scratch_[i] += rho_[i];
    }
    rho_.swap(scratch_);
}

void DensityMatrix::amplitude_damp(uint32_t q, double p) {
    if (p <= 0.0) return;
    const size_t m = size_t{1} << (n_ - 1 - q);
    const double s = std::sqrt(1.0 - p);
    for (size_t r = 0; r < dim_; ++r) {
        const bool rb = (r & m) != 0;
        cplx* row = &rho_[r * dim_];
        for (size_t c = 0; c < dim_; ++c) {
            const bool cb = (c & m) != 0;
            if (!rb && !cb) {
                row[c] += p * rho_[(r | m) * dim_ + (c | m)];
            } else if (rb && cb) {
                row[c] *= 1.0 - p;
            } else {
                row[c] *= s;
            }
        }
    }
}

void DensityMatrix::phase_damp(uint32_t q, double p) {
    if (p <= 0.0) return;
    const size_t m = size_t{1} << (n_ - 1 - q);
    const double s = std::sqrt(1.0 - p);
    for (size_t r = 0; r < dim_; ++r) {
        const bool rb = (r & m) != 0;
        cplx* row = &rho_[r * dim_];
        for (size_t c = 0; c < dim_; ++c) {
            if (rb != ((c & m) != 0)) row[c] *= s;
        }
    }
}

void DensityMatrix::depolarize_1q(uint32_t q, double p) {
    if (p <= 0.0) return;
    const size_t m = size_t{1} << (n_ - 1 - q);
    // (1-p) rho + p (I/2 (x) tr_q rho)
    for (size_t r = 0; r < dim_; ++r) {
        if (r & m) continue;
        cplx* row0 = &rho_[r * dim_];
        cplx* row1 = &rho_[(r | m) * dim_];
        for (size_t c = 0; c < dim_; ++c) {
            if (c & m) continue;
            const size_t c1 = c | m;
            const cplx diag_sum = row0[c] + row1[c1];
            row0[c] = (1.0 - p) * row0[c] + 0.5 * p * diag_sum;
            row1[c1] = (1.0 - p) * row1[c1] + 0.5 * p * diag_sum;
            row0[c1] *= 1.0 - p;
            row1[c] *= 1.0 - p;
        }
    }
}

void DensityMatrix::depolarize_2q(uint32_t a, uint32_t b, double p) {
    if (p <= 0.0) return;
    const size_t ma = size_t{1} << (n_ - 1 - a);
    const size_t mb = size_t{1} << (n_ - 1 - b);
    for (size_t rbase = 0; rbase < dim_; ++rbase) {
        if (rbase & (ma | mb)) continue;
        const size_t rows[4] = {rbase, rbase | mb, rbase | ma, rbase | ma | mb};
        for (size_t cbase = 0; cbase < dim_; ++cbase) {
            if (cbase & (ma | mb)) continue;
            const size_t cols[4] = {cbase, cbase | mb, cbase | ma, cbase | ma | mb};
            cplx diag_sum(0.0, 0.0);
            for (int i = 0; i < 4; ++i) diag_sum += rho_[rows[i] * dim_ + cols[i]];
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    cplx& v = rho_[rows[i] * dim_ + cols[j]];
                    v *= 1.0 - p;
                    if (i == j) v += 0.25 * p * diag_sum;
                }
            }
        }
    }
}

double DensityMatrix::trace_real() const {
    double acc = 0.0;
    for (size_t i = 0; i < dim_; ++i) acc += rho_[i * dim_ + i].real();
    return acc;
}

std::vector<double> DensityMatrix::probabilities() const {
    std::vector<double> probs(dim_);
    for (size_t i = 0; i < dim_; ++i) probs[i] = rho_[i * dim_ + i].real();
    return probs;
}

// --- noisy execution ----------------------------------------------------------

DensityMatrix evolve_density(const Schedule& schedule, const DeviceModel& device,
                             const NoiseConfig& noise, const std::vector<double>& detuning,
                             const std::function<void(const DensityMatrix&)>& on_step) {
    DensityMatrix rho(schedule.num_qubits);
    walk_schedule(
        schedule,
        [&](uint32_t q, int64_t span) {
            if (noise.enable_detuning && detuning[q] != 0.0) {
                rho.apply_phase(q, detuning[q] * static_cast<double>(span));
            }
            if (noise.enable_t1t2) {
                const IdleParams p = idle_params(device, q, span);
                rho.amplitude_damp(q, p.p_ad);
                rho.phase_damp(q, p.p_pd);
            }
        },
        [&](const Gate& g) {
            check_schedule_kind(g, device);
            if (g.kind == GateKind::RZ) {
                rho.apply_phase(g.qubits[0], g.angle);
                return;
            }
            if (is_two_qubit(g.kind)) {
                rho.apply_2q(g.qubits[0], g.qubits[1], gate_matrix_2q(g.kind, g.angle));
                if (noise.enable_gate_error) {
                    const double f = device.fid_2q(g.qubits[0], g.qubits[1]);
                    rho.depolarize_2q(g.qubits[0], g.qubits[1],
                                      depolarizing_p_from_fidelity(f, 2));
                }
            } else {
                rho.apply_1q(g.qubits[0], gate_matrix_1q(g.kind, g.angle));
                if (noise.enable_gate_error) {
                    const double f = device.fid_1q(g.qubits[0]);
                    rho.depolarize_1q(g.qubits[0], depolarizing_p_from_fidelity(f, 1));
                }
            }
        },
        [&] {
            if (on_step) on_step(rho);
        });
    return rho;
}

namespace {

std::vector<double> draw_detunings(const Schedule& sched, const DeviceModel& dev,
                                   const NoiseConfig& noise, Rng& rng) {
    std::vector<double> d(sched.num_qubits, 0.0);
    if (!noise.enable_detuning) return d;
    for (uint32_t q = 0; q < sched.num_qubits; ++q) {
        d[q] = noise.fixed_detuning ? *noise.fixed_detuning : dev.detuning_sigma * rng.normal();
    }
    return d;
}

RunResult trajectory_run(const Schedule& sched, const DeviceModel& dev, const NoiseConfig& noise,
                         uint64_t shots, uint64_t seed) {
    Rng rng(mix_seed(seed, 0x77a3ecULL));
    const uint32_t n = sched.num_qubits;
    Counts counts;

    for (uint64_t shot = 0; shot < shots; ++shot) {
        const std::vector<double> detuning = draw_detunings(sched, dev, noise, rng);
        StateVector sv(n);
        walk_schedule(
            sched,
            [&](uint32_t q, int64_t span) {
                if (noise.enable_detuning && detuning[q] != 0.0) {
                    sv.apply_1q(q, gate_matrix_1q(GateKind::RZ,
                                                  detuning[q] * static_cast<double>(span)));
                }
                if (noise.enable_t1t2) {
                    const IdleParams p = idle_params(dev, q, span);
                    const auto ad = kraus_channels(ChannelKind::AD, p.p_ad);
                    const double jump = p.p_ad * sv.prob_one(q);
                    sv.apply_kraus_1q(q, rng.uniform() < jump ? ad[1] : ad[0]);
                    const auto pd = kraus_channels(ChannelKind::PD, p.p_pd);
                    const double dephase = p.p_pd * sv.prob_one(q);
                    sv.apply_kraus_1q(q, rng.uniform() < dephase ? pd[1] : pd[0]);
                }
            },
            [&](const Gate& g) {
                check_schedule_kind(g, dev);
                sv.apply_gate(g);
                if (!noise.enable_gate_error) return;
                if (is_two_qubit(g.kind)) {
                    const double p =
                        depolarizing_p_from_fidelity(dev.fid_2q(g.qubits[0], g.qubits[1]), 2);
                    if (rng.uniform() < 15.0 * p / 16.0) {
                        const uint64_t which = 1 + rng.below(15);
                        const auto ks = kraus_channels(ChannelKind::DEPOL2, 1.0);
                        CMatrix pauli = ks[which];
                        for (auto& v : pauli.a) v /= std::sqrt(1.0 / 16.0);
                        sv.apply_2q(g.qubits[0], g.qubits[1], pauli);
                    }
                } else {
                    const double p = depolarizing_p_from_fidelity(dev.fid_1q(g.qubits[0]), 1);
                    if (rng.uniform() < 0.75 * p) {
                        const uint64_t which = 1 + rng.below(3);
                        const auto ks = kraus_channels(ChannelKind::DEPOL1, 1.0);
                        CMatrix pauli = ks[which];
                        for (auto& v : pauli.a) v /= std::sqrt(0.25);
                        sv.apply_1q(g.qubits[0], pauli);
                    }
                }
            });

        std::vector<double> probs(sv.amp.size());
        for (size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(sv.amp[i]);
        size_t idx = sample_index(cumulative_of(probs), rng.uniform());
        if (noise.enable_readout) {
            for (uint32_t q = 0; q < n; ++q) {
                if (rng.uniform() < dev.readout_flip[q]) idx ^= size_t{1} << (n - 1 - q);
            }
        }
        ++counts[bits_of_index(idx, n)];
    }

    RunResult result;
    result.counts = std::move(counts);
    result.shots = shots;
    result.engine = "trajectory";
    return result;
}

}  // namespace

std::vector<double> noisy_distribution(const Schedule& schedule, const DeviceModel& device,
                                       const NoiseConfig& noise) {
    if (schedule.num_qubits > 10) {
        throw std::invalid_argument("noisy_distribution: density engine is capped at 10 qubits");
    }
    const uint32_t samples =
        noise.enable_detuning && !noise.fixed_detuning ? std::max(1u, noise.detuning_samples) : 1;
    Rng det_rng(mix_seed(noise.rng_seed, 0xde7d37ULL));
    std::vector<double> mean(size_t{1} << schedule.num_qubits, 0.0);
    for (uint32_t s = 0; s < samples; ++s) {
        const std::vector<double> detuning = draw_detunings(schedule, device, noise, det_rng);
        const DensityMatrix rho = evolve_density(schedule, device, noise, detuning);
        const std::vector<double> probs = rho.probabilities();
        for (size_t i = 0; i < mean.size(); ++i) mean[i] += probs[i];
    }
    for (double& v : mean) v /= samples;
    return mean;
}

RunResult simulate_noisy(const Schedule& schedule, const DeviceModel& device,
                         const NoiseConfig& noise, uint64_t shots, uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("simulate_noisy: shots must be > 0");
    if (schedule.num_qubits > 12) {
        throw std::invalid_argument("simulate_noisy: more than 12 qubits");
    }
    schedule.validate();

    RunResult result;
    if (schedule.num_qubits <= 10) {
        NoiseConfig cfg = noise;
        cfg.rng_seed = mix_seed(seed, 0xd3415ULL);
        const std::vector<double> mean = noisy_distribution(schedule, device, cfg);
        Rng samp_rng(mix_seed(seed, 0x5a3b1eULL));
        result.counts = sample_counts(mean, shots, schedule.num_qubits, samp_rng, device,
                                      noise.enable_readout);
        result.shots = shots;
        result.engine = "density";
    } else {
        result = trajectory_run(schedule, device, noise, shots, seed);
    }
    result.tau_dt = schedule.total_dt;
    result.fq = circuit_fidelity(schedule_as_circuit(schedule), device);
    result.expectation_value = std::nan("");
    result.approx_ratio = std::nan("");
    result.success_prob = std::nan("");
    return result;
}

void evaluate_run(RunResult& result, const CostSpec& spec,
                  const std::vector<uint32_t>* phys_of_logical) {
    const Counts logical =
        phys_of_logical ? unpermute_counts(result.counts, *phys_of_logical) : result.counts;
    result.expectation_value = expectation(logical, spec);
    result.approx_ratio = approximation_ratio(result.expectation_value, spec.f0, spec.fmax);
    result.success_prob = success_probability(logical, spec);
}

}  // namespace ddbench
