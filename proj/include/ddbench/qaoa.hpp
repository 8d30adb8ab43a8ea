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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ddbench/circuit.hpp"
#include "ddbench/decompose.hpp"
#include "ddbench/device.hpp"

namespace ddbench {

using Counts = std::map<std::string, uint64_t>;

/// Portfolio selection problem data: pick B of n assets trading expected
/// return against covariance risk under a choice-count penalty.
struct PortfolioInstance {
    uint32_t n = 0;
    double lambda = 1.0;  // global scaling
    double q = 0.5;       // risk preference
    double A = 1.0;       // penalty factor
    uint32_t B = 1;       // assets to choose
    std::vector<double> mu;
    std::vector<std::vector<double>> sigma;

    void validate() const;
};

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    size_t depth() const { return gammas.size(); }
    void validate() const;
};

/// Ising form of the cost function: sum_{i<j} c_ij z_i z_j - sum_i k_i z_i
/// with z = 1 - 2*bit, plus the exact extrema over all bitstrings.
struct CostSpec {
    uint32_t n = 0;
    std::map<std::pair<uint32_t, uint32_t>, double> c;  // keyed (i, j), i < j
    std::vector<double> k;
    double f0 = 0.0;
    double fmax = 0.0;
    std::vector<std::string> optimal_bitstrings;  // sorted, all evaluate to f0
    bool has_extrema = false;

    double coupling(uint32_t i, uint32_t j) const;
};

/// c_ij = (lambda/2)(q sigma_ij + A); k_i = (lambda/2)[A(2B-n) + (1-q) mu_i
/// - q sum_j sigma_ij]. Extrema left unfilled.
CostSpec cost_coefficients(const PortfolioInstance& inst);

/// Exhaustive enumeration of all 2^n bitstrings (n <= 20); fills f0, fmax
/// and every tied optimal bitstring.
void exact_extrema(CostSpec& spec);

/// cost_coefficients + exact_extrema.
CostSpec cost_spec_of(const PortfolioInstance& inst);

double cost_value(std::string_view bits, const CostSpec& spec);

/// A built benchmark circuit together with the data needed to map, grade
/// and re-derive it.
struct QaoaCircuit {
    Circuit circuit;  // H layer, styled ZZ blocks, RZ cost terms, RX mixers, MEASURE
    PortfolioInstance instance;
    CostSpec cost;
    QaoaParams params;
    DecompositionStyle style;
};

/// Complete-graph QAOA circuit: H on every qubit, then per layer j
/// RZZ(2 gamma_j c_ij) for every i<j expanded per style, RZ(-2 gamma_j k_i)
/// per qubit and the RX(2 beta_j) mixer, then a final MEASURE.
QaoaCircuit build_qaoa(const PortfolioInstance& inst, const QaoaParams& params,
                       DecompositionStyle style);

/// Same evolution with ZZ interactions kept as RZZ gates; used by the ideal
/// sampler and parameter search where no lowering is wanted.
Circuit build_qaoa_rzz(const CostSpec& cost, const QaoaParams& params, bool with_measure = true);

struct MappedCircuit {
    Circuit circuit;
    std::vector<uint32_t> phys_of_logical;  // final position of each logical qubit
};

/// Realizes every cost layer as the canonical linear-chain swap network:
/// n alternating even/odd brick layers of fused ZZ-SWAP blocks (3 two-qubit
/// gates each in the chosen style) covering all n(n-1)/2 interactions.
MappedCircuit swap_network_map(const QaoaCircuit& qc, const DeviceModel& device);

/// Reorders a measured physical bitstring into logical order.
std::string unpermute_bits(std::string_view physical_bits,
                           const std::vector<uint32_t>& phys_of_logical);
Counts unpermute_counts(const Counts& physical, const std::vector<uint32_t>& phys_of_logical);

double expectation(const Counts& counts, const CostSpec& spec);
double approximation_ratio(double expectation_value, double f0, double fmax);
double success_probability(const Counts& counts, const CostSpec& spec);

/// Deterministic pseudo-random instance: sigma = G G^T / n with standard
/// normal G, mu uniform in [0,1], lambda = 1, q = 0.5, A = 1, B = ceil(n/2).
PortfolioInstance make_instance(uint32_t n, uint64_t seed);

/// Instance files: JSON with keys n, lambda, q, A, B, mu, sigma.
PortfolioInstance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const PortfolioInstance& inst);
PortfolioInstance load_instance(const std::string& path);
void save_instance(const PortfolioInstance& inst, const std::string& path);

/// Depth-1 grid search over (gamma, beta) in [0, pi) x [0, pi) on the exact
/// noise-free distribution; lowest expectation wins, ties to the smallest
/// (gamma, beta) lexicographically.
QaoaParams grid_search_params(const CostSpec& spec, uint32_t grid_points = 32);

/// Exact noise-free expectation of the cost function at the given angles.
double ideal_expectation(const CostSpec& spec, const QaoaParams& params);

}  // namespace ddbench
