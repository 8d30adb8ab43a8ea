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
#include <string>
#include <vector>

#include "ddbench/decompose.hpp"
#include "ddbench/noise.hpp"
#include "ddbench/schedule.hpp"

namespace ddbench {

inline constexpr std::string_view kToolVersion = "ddbench 0.1.0";

struct ExperimentConfig {
    std::vector<std::string> devices;  // calibration file paths
    uint32_t n_min = 3;
    uint32_t n_max = 3;
    std::vector<DecompositionStyle> styles;
    std::vector<DDSequence> sequences;  // DD arms; the no-DD baseline always runs
    std::vector<OptPreset> presets;
    uint64_t shots = 30000;
    uint64_t instance_seed = 1;
    NoiseConfig noise;
    std::string output_dir;

    void validate() const;
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_canonical_text(const ExperimentConfig& config);
uint64_t config_hash(const ExperimentConfig& config);

struct SweepOutcome {
    size_t cells_total = 0;
    size_t cells_failed = 0;
    std::vector<std::string> errors;
};

/// Runs the full factor grid (device x n x style x preset, baseline plus
/// each DD arm per cell) and writes runs.jsonl, metrics.csv, fits.csv and
/// emsr.csv into output_dir. A failing cell is logged and skipped; the rest
/// of the sweep continues.
SweepOutcome run_sweep(const ExperimentConfig& config);

/// Summary tables (factor means, fit parameters, EMSR) recomputed from the
/// result directory; deterministic for a fixed directory.
std::string report(const std::string& result_dir);

/// One human-readable line per JSONL run record.
std::string inspect(const std::string& jsonl_path);

}  // namespace ddbench
