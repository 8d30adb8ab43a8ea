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

#include "ddbench/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ddbench/metrics.hpp"
#include "ddbench/qaoa.hpp"
#include "ddbench/rng.hpp"

namespace ddbench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Shortest round-trip decimal form, same as the JSON writer uses.
std::string fmt_double(double v) {
    return json(v).dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct RunRecord {
    std::string device;
    std::string gate_set;
    uint32_t n = 0;
    std::string style, preset, sequence;
    uint64_t run_seed = 0;
    RunResult result;
    double r0 = 0.0, p0 = 0.0;
    double nar = 0.0, nsp = 0.0;
    QaoaParams params;
};

ordered_json record_to_json(const RunRecord& rec, const ExperimentConfig& config) {
    ordered_json j;
    j["schema"] = 1;
    j["tool_version"] = std::string(kToolVersion);
    j["config_hash"] = config_hash(config);
    j["device"] = rec.device;
    j["gate_set"] = rec.gate_set;
    j["n"] = rec.n;
    j["style"] = rec.style;
    j["preset"] = rec.preset;
    j["sequence"] = rec.sequence;
    j["instance_seed"] = config.instance_seed;
    j["run_seed"] = rec.run_seed;
    j["shots"] = rec.result.shots;
    j["engine"] = rec.result.engine;
    j["tau_dt"] = rec.result.tau_dt;
    j["fq"] = rec.result.fq;
    j["gamma"] = rec.params.gammas;
    j["beta"] = rec.params.betas;
    j["r0"] = rec.r0;
    j["p0"] = rec.p0;
    j["F"] = rec.result.expectation_value;
    j["r"] = rec.result.approx_ratio;
    j["sp"] = rec.result.success_prob;
    j["nar"] = rec.nar;
    j["nsp"] = rec.nsp;
    ordered_json counts = ordered_json::object();
    for (const auto& [bits, count] : rec.result.counts) counts[bits] = count;
    j["counts"] = counts;
    return j;
}

std::string metrics_csv_header() {
    return "device,gate_set,n,style,preset,sequence,nar_b,nar_dd,nsp_b,nsp_dd,delta_nar,"
           "delta_nsp,fq,log_tau\n";
}

std::string metrics_csv_row(const MetricsRecord& m, const std::string& gate_set) {
    std::ostringstream os;
    os << m.device << "," << gate_set << "," << m.n_qubits << "," << m.style << "," << m.preset
       << "," << m.sequence << "," << fmt_double(m.nar_b) << "," << fmt_double(m.nar_dd) << ","
       << fmt_double(m.nsp_b) << "," << fmt_double(m.nsp_dd) << "," << fmt_double(m.delta_nar)
       << "," << fmt_double(m.delta_nsp) << "," << fmt_double(m.fq) << ","
       << fmt_double(m.log_tau) << "\n";
    return os.str();
}

struct MetricsRow {
    MetricsRecord record;
    std::string gate_set;
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open metrics file: " + path);
    std::vector<MetricsRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 14) throw std::invalid_argument("metrics.csv: malformed row: " + line);
        MetricsRow row;
        row.record = MetricsRecord::make(std::stod(f[6]), std::stod(f[7]), std::stod(f[8]),
                                         std::stod(f[9]), std::stod(f[12]), std::stod(f[13]),
                                         static_cast<uint32_t>(std::stoul(f[2])), f[0], f[3], f[5],
                                         f[4]);
        row.gate_set = f[1];
        rows.push_back(std::move(row));
    }
    return rows;
}

// p-values below 1e-12 display as 0 in formatted tables; stored values stay
// exact.
std::string fmt_p_display(double p) {
    return fmt_double(p < 1e-12 ? 0.0 : p);
}

struct Series {
    std::vector<double> xs, ys;
};

void append_fit_rows(std::ostringstream& os, const std::string& axis,
                     const std::vector<MetricsRow>& rows, bool display_clamp) {
    const std::vector<std::pair<std::string, double MetricsRecord::*>> metrics = {
        {"NAR_B", &MetricsRecord::nar_b},     {"NAR_DD", &MetricsRecord::nar_dd},
        {"NSP_B", &MetricsRecord::nsp_b},     {"NSP_DD", &MetricsRecord::nsp_dd},
        {"DELTA_NAR", &MetricsRecord::delta_nar}, {"DELTA_NSP", &MetricsRecord::delta_nsp}};
    for (const auto& [name, field] : metrics) {
        Series s;
        for (const MetricsRow& row : rows) {
            double x = 0.0;
            if (axis == "fq") {
                x = row.record.fq;
            } else if (axis == "log_tau") {
                x = row.record.log_tau;
            } else {
                x = static_cast<double>(row.record.n_qubits);
            }
            s.xs.push_back(x);
            s.ys.push_back(row.record.*field);
        }
        double mean = 0.0;
        for (double y : s.ys) mean += y;
        if (!s.ys.empty()) mean /= static_cast<double>(s.ys.size());
        bool degenerate = s.xs.size() < 3;
        if (!degenerate) {
            const double first = s.xs.front();
            degenerate = std::all_of(s.xs.begin(), s.xs.end(),
                                     [&](double v) { return v == first; });
        }
        if (degenerate) {
            os << axis << "," << name << "," << fmt_double(mean) << ",,,,," << s.xs.size() << "\n";
            continue;
        }
        const FitResult fit = linear_fit(s.xs, s.ys);
        os << axis << "," << name << "," << fmt_double(mean) << "," << fmt_double(fit.slope) << ","
           << fmt_double(fit.intercept) << "," << fmt_double(fit.c_r) << ","
           << (display_clamp ? fmt_p_display(fit.p_value) : fmt_double(fit.p_value)) << ","
           << fit.n_points << "\n";
    }
}

std::string fits_csv_of(const std::vector<MetricsRow>& rows, bool display_clamp) {
    std::ostringstream os;
    os << "axis,metric,mean,slope,intercept,c_r,p_value,n_points\n";
    for (const char* axis : {"fq", "log_tau", "n"}) append_fit_rows(os, axis, rows, display_clamp);
    return os.str();
}

std::string emsr_csv_of(const std::vector<MetricsRow>& rows) {
    std::ostringstream os;
    os << "factor,level,emsr_ar,emsr_sp,n_points\n";
    using Selector = std::function<std::string(const MetricsRow&)>;
    const std::vector<std::pair<std::string, Selector>> factors = {
        {"all", [](const MetricsRow&) { return std::string("all"); }},
        {"device", [](const MetricsRow& r) { return r.record.device; }},
        {"gate_set", [](const MetricsRow& r) { return r.gate_set; }},
        {"style", [](const MetricsRow& r) { return r.record.style; }},
        {"sequence", [](const MetricsRow& r) { return r.record.sequence; }},
        {"preset", [](const MetricsRow& r) { return r.record.preset; }},
    };
    for (const auto& [factor, select] : factors) {
        std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> levels;
        for (const MetricsRow& row : rows) {
            auto& [ar, sp] = levels[select(row)];
            ar.push_back(row.record.delta_nar);
            sp.push_back(row.record.delta_nsp);
        }
        for (const auto& [level, deltas] : levels) {
            os << factor << "," << level << "," << fmt_double(emsr(deltas.first)) << ","
               << fmt_double(emsr(deltas.second)) << "," << deltas.first.size() << "\n";
        }
    }
    return os.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    if (devices.empty()) throw std::invalid_argument("config: at least one device required");
    if (styles.empty()) throw std::invalid_argument("config: at least one style required");
    if (presets.empty()) throw std::invalid_argument("config: at least one preset required");
    if (n_min < 3 || n_min > n_max || n_max > 12) {
        throw std::invalid_argument("config: qubit range must satisfy 3 <= min <= max <= 12");
    }
    if (shots == 0) throw std::invalid_argument("config: shots must be > 0");
    if (output_dir.empty()) throw std::invalid_argument("config: output_dir required");
}

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig c;
    try {
        c.devices = j.at("devices").get<std::vector<std::string>>();
        c.n_min = j.at("qubit_range").at(0).get<uint32_t>();
        c.n_max = j.at("qubit_range").at(1).get<uint32_t>();
        for (const auto& s : j.at("styles")) c.styles.push_back(style_from_name(s.get<std::string>()));
        for (const auto& s : j.at("sequences")) {
            const std::string name = s.get<std::string>();
            if (name == "NONE") continue;  // baseline always runs
            c.sequences.push_back(dd_sequence_from_name(name));
        }
        for (const auto& s : j.at("presets")) c.presets.push_back(preset_from_name(s.get<std::string>()));
        c.shots = j.value("shots", uint64_t{30000});
        c.instance_seed = j.value("instance_seed", uint64_t{1});
        c.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("noise")) {
            const json& nj = j.at("noise");
            c.noise.enable_t1t2 = nj.value("enable_t1t2", true);
            c.noise.enable_detuning = nj.value("enable_detuning", true);
            c.noise.enable_gate_error = nj.value("enable_gate_error", true);
            c.noise.enable_readout = nj.value("enable_readout", true);
            c.noise.detuning_samples = nj.value("detuning_samples", 16u);
            c.noise.rng_seed = nj.value("rng_seed", uint64_t{0});
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config schema error: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    return config_from_json_text(read_file(path));
}

std::string config_canonical_text(const ExperimentConfig& c) {
    ordered_json j;
    j["devices"] = c.devices;
    j["qubit_range"] = {c.n_min, c.n_max};
    std::vector<std::string> styles, sequences, presets;
    for (auto s : c.styles) styles.emplace_back(style_name(s));
    for (auto s : c.sequences) sequences.emplace_back(dd_sequence_name(s));
    for (auto p : c.presets) presets.emplace_back(preset_name(p));
    j["styles"] = styles;
    j["sequences"] = sequences;
    j["presets"] = presets;
    j["shots"] = c.shots;
    j["instance_seed"] = c.instance_seed;
    j["noise"] = {{"enable_t1t2", c.noise.enable_t1t2},
                  {"enable_detuning", c.noise.enable_detuning},
                  {"enable_gate_error", c.noise.enable_gate_error},
                  {"enable_readout", c.noise.enable_readout},
                  {"detuning_samples", c.noise.detuning_samples},
                  {"rng_seed", c.noise.rng_seed}};
    return j.dump();
}

uint64_t config_hash(const ExperimentConfig& config) {
    return fnv1a64(config_canonical_text(config));
}

SweepOutcome run_sweep(const ExperimentConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.output_dir);

    std::vector<DeviceModel> devices;
    for (const std::string& path : config.devices) devices.push_back(load_device(path));

    std::vector<RunRecord> records;
    std::vector<MetricsRow> metric_rows;
    SweepOutcome outcome;

    for (const DeviceModel& device : devices) {
        for (uint32_t n = config.n_min; n <= config.n_max; ++n) {
            const PortfolioInstance inst = make_instance(n, mix_seed(config.instance_seed, n));
            const CostSpec spec = cost_spec_of(inst);
            const QaoaParams params = grid_search_params(spec);

            for (const DecompositionStyle style : config.styles) {
                for (const OptPreset preset : config.presets) {
                    ++outcome.cells_total;
                    const std::string cell_id = device.name + "|n=" + std::to_string(n) + "|" +
                                                std::string(style_name(style)) + "|" +
                                                std::string(preset_name(preset));
                    try {
                        // Noise-free baseline at the cell's parameters.
                        const Circuit ideal_circuit = build_qaoa_rzz(spec, params);
                        const uint64_t ideal_seed =
                            mix_seed(config.noise.rng_seed, fnv1a64(cell_id + "|ideal"));
                        const Counts ideal_counts =
                            simulate_ideal(ideal_circuit, config.shots, ideal_seed);
                        const double r0 = approximation_ratio(expectation(ideal_counts, spec),
                                                              spec.f0, spec.fmax);
                        const double p0 = success_probability(ideal_counts, spec);
                        if (r0 == 0.0 || p0 == 0.0) {
                            throw std::runtime_error("noise-free baseline hit zero (r0 = " +
                                                     fmt_double(r0) + ", p0 = " + fmt_double(p0) +
                                                     ")");
                        }

                        const QaoaCircuit qc = build_qaoa(inst, params, style);
                        const MappedCircuit mapped = swap_network_map(qc, device);
                        const Circuit lowered = lower_to_basis(mapped.circuit, device, style);
                        const Circuit optimized = optimize(lowered, preset);
                        const Schedule sched = alap_schedule(optimized, device);
                        const double fq_base = circuit_fidelity(optimized, device);
                        const double log_tau = std::log(static_cast<double>(sched.total_dt));

                        auto run_arm = [&](const Schedule& s, const std::string& seq_name) {
                            RunRecord rec;
                            rec.device = device.name;
                            rec.gate_set = std::string(native_2q_name(device.native_2q));
                            rec.n = n;
                            rec.style = std::string(style_name(style));
                            rec.preset = std::string(preset_name(preset));
                            rec.sequence = seq_name;
                            rec.params = params;
                            rec.run_seed =
                                mix_seed(config.noise.rng_seed, fnv1a64(cell_id + "|" + seq_name));
                            rec.result =
                                simulate_noisy(s, device, config.noise, config.shots, rec.run_seed);
                            evaluate_run(rec.result, spec, &mapped.phys_of_logical);
                            rec.r0 = r0;
                            rec.p0 = p0;
                            const auto [nar, nsp] = normalized_metrics(rec.result.approx_ratio,
                                                                       rec.result.success_prob, r0, p0);
                            rec.nar = nar;
                            rec.nsp = nsp;
                            return rec;
                        };

                        const RunRecord base = run_arm(sched, "NONE");
                        records.push_back(base);
                        for (const DDSequence seq : config.sequences) {
                            const Schedule padded = insert_dd(sched, seq, device);
                            const RunRecord dd = run_arm(padded, std::string(dd_sequence_name(seq)));
                            records.push_back(dd);
                            MetricsRow row;
                            row.record = MetricsRecord::make(
                                base.nar, dd.nar, base.nsp, dd.nsp, fq_base, log_tau, n,
                                device.name, std::string(style_name(style)),
                                std::string(dd_sequence_name(seq)),
                                std::string(preset_name(preset)));
                            row.gate_set = std::string(native_2q_name(device.native_2q));
                            metric_rows.push_back(std::move(row));
                        }
                    } catch (const std::exception& e) {
                        ++outcome.cells_failed;
                        outcome.errors.push_back(cell_id + ": " + e.what());
                        std::cerr << "[ddbench] cell failed " << cell_id << ": " << e.what()
                                  << "\n";
                    }
                }
            }
        }
    }

    const std::filesystem::path dir(config.output_dir);
    {
        std::ofstream out(dir / "runs.jsonl");
        for (const RunRecord& rec : records) out << record_to_json(rec, config).dump() << "\n";
    }
    {
        std::ofstream out(dir / "metrics.csv");
        out << metrics_csv_header();
        for (const MetricsRow& row : metric_rows) out << metrics_csv_row(row.record, row.gate_set);
    }
    {
        std::ofstream out(dir / "fits.csv");
        out << fits_csv_of(metric_rows, /*display_clamp=*/false);
    }
    {
        std::ofstream out(dir / "emsr.csv");
        out << emsr_csv_of(metric_rows);
    }
    return outcome;
}

std::string report(const std::string& result_dir) {
    const std::filesystem::path dir(result_dir);
    const std::vector<MetricsRow> rows = read_metrics_csv((dir / "metrics.csv").string());
    if (rows.empty()) throw std::invalid_argument("report: no metrics rows in " + result_dir);

    std::ostringstream os;
    os << "# factor summary\n";
    os << "factor,level,mean_nar_b,mean_delta_nar,mean_nsp_b,mean_delta_nsp,"
          "slope_delta_nar_vs_n,slope_delta_nsp_vs_n,emsr_ar,emsr_sp,n_points\n";
    using Selector = std::function<std::string(const MetricsRow&)>;
    const std::vector<std::pair<std::string, Selector>> factors = {
        {"all", [](const MetricsRow&) { return std::string("all"); }},
        {"gate_set", [](const MetricsRow& r) { return r.gate_set; }},
        {"device", [](const MetricsRow& r) { return r.record.device; }},
        {"style", [](const MetricsRow& r) { return r.record.style; }},
        {"sequence", [](const MetricsRow& r) { return r.record.sequence; }},
        {"preset", [](const MetricsRow& r) { return r.record.preset; }},
    };
    for (const auto& [factor, select] : factors) {
        std::map<std::string, std::vector<const MetricsRow*>> levels;
        for (const MetricsRow& row : rows) levels[select(row)].push_back(&row);
        for (const auto& [level, group] : levels) {
            double nar_b = 0.0, dn = 0.0, nsp_b = 0.0, ds = 0.0;
            std::vector<double> dnar, dnsp, ns;
            for (const MetricsRow* r : group) {
                nar_b += r->record.nar_b;
                dn += r->record.delta_nar;
                nsp_b += r->record.nsp_b;
                ds += r->record.delta_nsp;
                dnar.push_back(r->record.delta_nar);
                dnsp.push_back(r->record.delta_nsp);
                ns.push_back(static_cast<double>(r->record.n_qubits));
            }
            // Slope of the DD improvements against qubit count, when the
            // level spans enough distinct sizes for a fit.
            std::string slope_nar, slope_nsp;
            const bool fittable =
                ns.size() >= 3 && !std::all_of(ns.begin(), ns.end(),
                                               [&](double v) { return v == ns.front(); });
            if (fittable) {
                slope_nar = fmt_double(linear_fit(ns, dnar).slope);
                slope_nsp = fmt_double(linear_fit(ns, dnsp).slope);
            }
            const double count = static_cast<double>(group.size());
            os << factor << "," << level << "," << fmt_double(nar_b / count) << ","
               << fmt_double(dn / count) << "," << fmt_double(nsp_b / count) << ","
               << fmt_double(ds / count) << "," << slope_nar << "," << slope_nsp << ","
               << fmt_double(emsr(dnar)) << "," << fmt_double(emsr(dnsp)) << "," << group.size()
               << "\n";
        }
    }
    os << "\n# linear fits\n";
    os << fits_csv_of(rows, /*display_clamp=*/true);
    return os.str();
}

std::string inspect(const std::string& jsonl_path) {
    std::ifstream in(jsonl_path);
    if (!in) throw std::invalid_argument("cannot open " + jsonl_path);
    std::ostringstream os;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        os << j.value("device", "?") << " n=" << j.value("n", 0) << " "
           << j.value("style", "?") << " " << j.value("preset", "?") << " seq="
           << j.value("sequence", "?") << " engine=" << j.value("engine", "?")
           << " r=" << fmt_double(j.value("r", 0.0)) << " sp=" << fmt_double(j.value("sp", 0.0))
           << " nar=" << fmt_double(j.value("nar", 0.0))
           << " nsp=" << fmt_double(j.value("nsp", 0.0)) << " tau_dt=" << j.value("tau_dt", 0)
           << " fq=" << fmt_double(j.value("fq", 0.0)) << "\n";
    }
    return os.str();
}

}  // namespace ddbench
