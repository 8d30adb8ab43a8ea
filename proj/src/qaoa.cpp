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

#include "ddbench/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "ddbench/rng.hpp"

namespace ddbench {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::string bits_of_index(size_t index, uint32_t n) {
    std::string s(n, '0');
    for (uint32_t i = 0; i < n; ++i) {
        if ((index >> (n - 1 - i)) & 1) s[i] = '1';
    }
    return s;
}

// Cost of every basis state, indexed with qubit 0 as the most significant
// bit.
std::vector<double> cost_table(const CostSpec& spec) {
    const size_t dim = size_t{1} << spec.n;
    std::vector<double> table(dim, 0.0);
    for (size_t b = 0; b < dim; ++b) {
        double z[20];
        for (uint32_t i = 0; i < spec.n; ++i) {
            z[i] = ((b >> (spec.n - 1 - i)) & 1) ? -1.0 : 1.0;
        }
        double v = 0.0;
        for (const auto& [pair, cij] : spec.c) v += cij * z[pair.first] * z[pair.second];
        for (uint32_t i = 0; i < spec.n; ++i) v -= spec.k[i] * z[i];
        table[b] = v;
    }
    return table;
}

void append_zz_block(Circuit& circuit, DecompositionStyle style, double theta, uint32_t a,
                     uint32_t b) {
    const Circuit block = style == DecompositionStyle::CX_IMPL ? rzz_as_cx(theta, a, b)
                                                               : rzz_as_cz(theta, a, b);
    circuit.append(block);
}

// Fused interaction+SWAP brick: matrix SWAP * RZZ(theta), three two-qubit
// gates in either style.
void append_zzswap_block(Circuit& circuit, DecompositionStyle style, double theta, uint32_t a,
                         uint32_t b) {
    if (style == DecompositionStyle::CX_IMPL) {
        circuit.push(Gate::cx(a, b));
        circuit.push(Gate::rz(b, theta));
        circuit.push(Gate::cx(b, a));
        circuit.push(Gate::cx(a, b));
        return;
    }
    circuit.push(Gate::h(b));
    circuit.push(Gate::cz(a, b));
    circuit.push(Gate::h(b));
    circuit.push(Gate::rz(b, theta));
    circuit.push(Gate::h(a));
    circuit.push(Gate::cz(a, b));
    circuit.push(Gate::h(a));
    circuit.push(Gate::h(b));
    circuit.push(Gate::cz(a, b));
    circuit.push(Gate::h(b));
}

}  // namespace

void PortfolioInstance::validate() const {
    if (n == 0) throw std::invalid_argument("instance: n must be >= 1");
    if (B < 1 || B > n) throw std::invalid_argument("instance: need 1 <= B <= n");
    if (mu.size() != n) throw std::invalid_argument("instance: mu must have n entries");
    if (sigma.size() != n) throw std::invalid_argument("instance: sigma must be n x n");
    if (!std::isfinite(lambda) || !std::isfinite(q) || !std::isfinite(A)) {
        throw std::invalid_argument("instance: parameters must be finite");
    }
    for (uint32_t i = 0; i < n; ++i) {
        if (sigma[i].size() != n) throw std::invalid_argument("instance: sigma must be n x n");
        if (!std::isfinite(mu[i])) throw std::invalid_argument("instance: mu must be finite");
        for (uint32_t j = 0; j < n; ++j) {
            if (!std::isfinite(sigma[i][j])) {
                throw std::invalid_argument("instance: sigma must be finite");
            }
            if (std::abs(sigma[i][j] - sigma[j][i]) > 1e-12) {
                throw std::invalid_argument("instance: sigma must be symmetric within 1e-12");
            }
        }
    }
}

void QaoaParams::validate() const {
    if (gammas.empty() || gammas.size() != betas.size()) {
        throw std::invalid_argument("params: gammas and betas must be nonempty and equal length");
    }
    for (double g : gammas) {
        if (!std::isfinite(g)) throw std::invalid_argument("params: angles must be finite");
    }
    for (double b : betas) {
        if (!std::isfinite(b)) throw std::invalid_argument("params: angles must be finite");
    }
}

double CostSpec::coupling(uint32_t i, uint32_t j) const {
    if (i > j) std::swap(i, j);
    const auto it = c.find({i, j});
    return it == c.end() ? 0.0 : it->second;
}

CostSpec cost_coefficients(const PortfolioInstance& inst) {
    inst.validate();
    CostSpec spec;
    spec.n = inst.n;
    spec.k.assign(inst.n, 0.0);
    const double half_lambda = inst.lambda / 2.0;
    for (uint32_t i = 0; i < inst.n; ++i) {
        for (uint32_t j = i + 1; j < inst.n; ++j) {
            spec.c[{i, j}] = half_lambda * (inst.q * inst.sigma[i][j] + inst.A);
        }
        double sigma_row = 0.0;
        for (uint32_t j = 0; j < inst.n; ++j) sigma_row += inst.sigma[i][j];
        spec.k[i] = half_lambda * (inst.A * (2.0 * inst.B - static_cast<double>(inst.n)) +
                                   (1.0 - inst.q) * inst.mu[i] - inst.q * sigma_row);
    }
    return spec;
}

void exact_extrema(CostSpec& spec) {
    if (spec.n > 20) throw std::invalid_argument("exact_extrema: n > 20 is not enumerable here");
    const std::vector<double> table = cost_table(spec);
    spec.f0 = *std::min_element(table.begin(), table.end());
    spec.fmax = *std::max_element(table.begin(), table.end());
    spec.optimal_bitstrings.clear();
    for (size_t b = 0; b < table.size(); ++b) {
        if (table[b] == spec.f0) spec.optimal_bitstrings.push_back(bits_of_index(b, spec.n));
    }
    spec.has_extrema = true;
}

CostSpec cost_spec_of(const PortfolioInstance& inst) {
    CostSpec spec = cost_coefficients(inst);
    exact_extrema(spec);
    return spec;
}

double cost_value(std::string_view bits, const CostSpec& spec) {
    if (bits.size() != spec.n) {
        throw std::invalid_argument("cost_value: bitstring length " + std::to_string(bits.size()) +
                                    " does not match n = " + std::to_string(spec.n));
    }
    double z[20];
    for (uint32_t i = 0; i < spec.n; ++i) z[i] = bits[i] == '1' ? -1.0 : 1.0;
    double v = 0.0;
    for (const auto& [pair, cij] : spec.c) v += cij * z[pair.first] * z[pair.second];
    for (uint32_t i = 0; i < spec.n; ++i) v -= spec.k[i] * z[i];
    return v;
}

Circuit build_qaoa_rzz(const CostSpec& cost, const QaoaParams& params, bool with_measure) {
    params.validate();
    Circuit c(cost.n, "qaoa-rzz");
    for (uint32_t q = 0; q < cost.n; ++q) c.push(Gate::h(q));
    for (size_t layer = 0; layer < params.depth(); ++layer) {
        const double gamma = params.gammas[layer];
        const double beta = params.betas[layer];
        for (const auto& [pair, cij] : cost.c) {
            c.push(Gate::rzz(pair.first, pair.second, 2.0 * gamma * cij));
        }
        for (uint32_t q = 0; q < cost.n; ++q) c.push(Gate::rz(q, -2.0 * gamma * cost.k[q]));
        for (uint32_t q = 0; q < cost.n; ++q) c.push(Gate::rx(q, 2.0 * beta));
    }
    if (with_measure) c.push(Gate::measure());
    return c;
}

QaoaCircuit build_qaoa(const PortfolioInstance& inst, const QaoaParams& params,
                       DecompositionStyle style) {
    params.validate();
    QaoaCircuit out;
    out.instance = inst;
    out.cost = cost_spec_of(inst);
    out.params = params;
    out.style = style;

    Circuit c(inst.n, "qaoa");
    for (uint32_t q = 0; q < inst.n; ++q) c.push(Gate::h(q));
    for (size_t layer = 0; layer < params.depth(); ++layer) {
        const double gamma = params.gammas[layer];
        const double beta = params.betas[layer];
        for (const auto& [pair, cij] : out.cost.c) {
            append_zz_block(c, style, 2.0 * gamma * cij, pair.first, pair.second);
        }
        for (uint32_t q = 0; q < inst.n; ++q) c.push(Gate::rz(q, -2.0 * gamma * out.cost.k[q]));
        for (uint32_t q = 0; q < inst.n; ++q) c.push(Gate::rx(q, 2.0 * beta));
    }
    c.push(Gate::measure());
    out.circuit = std::move(c);
    return out;
}

MappedCircuit swap_network_map(const QaoaCircuit& qc, const DeviceModel& device) {
    const uint32_t n = qc.cost.n;
    if (n > device.chain_length) {
        throw std::invalid_argument("swap_network_map: chain too short (" +
                                    std::to_string(device.chain_length) + " qubits for n = " +
                                    std::to_string(n) + ")");
    }
    MappedCircuit out;
    out.circuit = Circuit(n, "qaoa-mapped");
    Circuit& c = out.circuit;

    std::vector<uint32_t> logical_at(n);  // logical index occupying each chain position
    for (uint32_t p = 0; p < n; ++p) logical_at[p] = p;

    for (uint32_t p = 0; p < n; ++p) c.push(Gate::h(p));

    for (size_t layer = 0; layer < qc.params.depth(); ++layer) {
        const double gamma = qc.params.gammas[layer];
        const double beta = qc.params.betas[layer];

        if (n == 2) {
            // Adjacent already; a bare interaction block with no swap.
            append_zz_block(c, qc.style, 2.0 * gamma * qc.cost.coupling(logical_at[0], logical_at[1]),
                            0, 1);
        } else if (n > 2) {
            for (uint32_t brick = 0; brick < n; ++brick) {
                for (uint32_t p = brick % 2; p + 1 < n; p += 2) {
                    const double cij = qc.cost.coupling(logical_at[p], logical_at[p + 1]);
                    append_zzswap_block(c, qc.style, 2.0 * gamma * cij, p, p + 1);
                    std::swap(logical_at[p], logical_at[p + 1]);
                }
            }
        }

        for (uint32_t p = 0; p < n; ++p) {
            c.push(Gate::rz(p, -2.0 * gamma * qc.cost.k[logical_at[p]]));
        }
        for (uint32_t p = 0; p < n; ++p) c.push(Gate::rx(p, 2.0 * beta));
    }
    c.push(Gate::measure());

    out.phys_of_logical.assign(n, 0);
    for (uint32_t p = 0; p < n; ++p) out.phys_of_logical[logical_at[p]] = p;
    return out;
}

std::string unpermute_bits(std::string_view physical_bits,
                           const std::vector<uint32_t>& phys_of_logical) {
    std::string logical(phys_of_logical.size(), '0');
    for (size_t l = 0; l < phys_of_logical.size(); ++l) {
        logical[l] = physical_bits[phys_of_logical[l]];
    }
    return logical;
}

Counts unpermute_counts(const Counts& physical, const std::vector<uint32_t>& phys_of_logical) {
    Counts logical;
    for (const auto& [bits, count] : physical) {
        logical[unpermute_bits(bits, phys_of_logical)] += count;
    }
    return logical;
}

double expectation(const Counts& counts, const CostSpec& spec) {
    uint64_t shots = 0;
    double acc = 0.0;
    for (const auto& [bits, count] : counts) {
        shots += count;
        acc += static_cast<double>(count) * cost_value(bits, spec);
    }
    if (shots == 0) throw std::invalid_argument("expectation: empty histogram");
    return acc / static_cast<double>(shots);
}

double approximation_ratio(double expectation_value, double f0, double fmax) {
    if (f0 == fmax) throw std::invalid_argument("approximation_ratio: degenerate f0 == fmax");
    return (expectation_value - fmax) / (f0 - fmax);
}

double success_probability(const Counts& counts, const CostSpec& spec) {
    uint64_t shots = 0;
    uint64_t hits = 0;
    for (const auto& [bits, count] : counts) {
        shots += count;
        if (std::binary_search(spec.optimal_bitstrings.begin(), spec.optimal_bitstrings.end(),
                               bits)) {
            hits += count;
        }
    }
    if (shots == 0) throw std::invalid_argument("success_probability: empty histogram");
    return static_cast<double>(hits) / static_cast<double>(shots);
}

PortfolioInstance make_instance(uint32_t n, uint64_t seed) {
    Rng rng(mix_seed(seed, 0x1457a9ceULL));
    PortfolioInstance inst;
    inst.n = n;
    inst.lambda = 1.0;
    inst.q = 0.5;
    inst.A = 1.0;
    inst.B = (n + 1) / 2;
    inst.mu.resize(n);
    for (auto& m : inst.mu) m = rng.uniform();
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (auto& row : g) {
        for (auto& v : row) v = rng.normal();
    }
    inst.sigma.assign(n, std::vector<double>(n, 0.0));
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (uint32_t k = 0; k < n; ++k) dot += g[i][k] * g[j][k];
            inst.sigma[i][j] = dot / n;
        }
        // Exact symmetry regardless of floating summation order.
        for (uint32_t j = 0; j < i; ++j) inst.sigma[i][j] = inst.sigma[j][i];
    }
    inst.validate();
    return inst;
}

PortfolioInstance instance_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("instance parse error: ") + e.what());
    }
    PortfolioInstance inst;
    try {
        inst.n = j.at("n").get<uint32_t>();
        inst.lambda = j.at("lambda").get<double>();
        inst.q = j.at("q").get<double>();
        inst.A = j.at("A").get<double>();
        inst.B = j.at("B").get<uint32_t>();
        inst.mu = j.at("mu").get<std::vector<double>>();
        inst.sigma = j.at("sigma").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance schema error: ") + e.what());
    }
    inst.validate();
    return inst;
}

std::string instance_to_json_text(const PortfolioInstance& inst) {
    nlohmann::ordered_json j;
    j["n"] = inst.n;
    j["lambda"] = inst.lambda;
    j["q"] = inst.q;
    j["A"] = inst.A;
    j["B"] = inst.B;
    j["mu"] = inst.mu;
    j["sigma"] = inst.sigma;
    return j.dump(2) + "\n";
}

PortfolioInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    return instance_from_json_text(
        std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()));
}

void save_instance(const PortfolioInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write instance file: " + path);
    out << instance_to_json_text(inst);
}

double ideal_expectation(const CostSpec& spec, const QaoaParams& params) {
    params.validate();
    const uint32_t n = spec.n;
    const size_t dim = size_t{1} << n;
    const std::vector<double> costs = cost_table(spec);

    std::vector<std::complex<double>> psi(dim, std::complex<double>(1.0 / std::sqrt(double(dim)), 0.0));
    for (size_t layer = 0; layer < params.depth(); ++layer) {
        const double gamma = params.gammas[layer];
        const double beta = params.betas[layer];
        for (size_t b = 0; b < dim; ++b) {
            psi[b] *= std::exp(std::complex<double>(0.0, -gamma * costs[b]));
        }
        // Mixer: RX(2 beta) on every qubit.
        const std::complex<double> m00(std::cos(beta), 0.0);
        const std::complex<double> m01(0.0, -std::sin(beta));
        for (uint32_t qbit = 0; qbit < n; ++qbit) {
            const size_t mask = size_t{1} << (n - 1 - qbit);
            for (size_t b = 0; b < dim; ++b) {
                if (b & mask) continue;
                const auto v0 = psi[b];
                const auto v1 = psi[b | mask];
                psi[b] = m00 * v0 + m01 * v1;
                psi[b | mask] = m01 * v0 + m00 * v1;
            }
        }
    }
    double acc = 0.0;
    for (size_t b = 0; b < dim; ++b) acc += std::norm(psi[b]) * costs[b];
    return acc;
}

QaoaParams grid_search_params(const CostSpec& spec, uint32_t grid_points) {
    if (grid_points == 0) throw std::invalid_argument("grid_search_params: empty grid");
    double best = std::numeric_limits<double>::infinity();
    QaoaParams best_params{{0.0}, {0.0}};
    for (uint32_t gi = 0; gi < grid_points; ++gi) {
        const double gamma = kPi * gi / grid_points;
        for (uint32_t bi = 0; bi < grid_points; ++bi) {
            const double beta = kPi * bi / grid_points;
            const QaoaParams p{{gamma}, {beta}};
            const double value = ideal_expectation(spec, p);
            if (value < best) {
                best = value;
                best_params = p;
            }
        }
    }
    return best_params;
}

}  // namespace ddbench
