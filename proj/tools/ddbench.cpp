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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ddbench/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"QAOA benchmark sweeps with ALAP scheduling, dynamical decoupling and a noise simulator"};
    app.set_version_flag("--version", std::string(ddbench::kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run the factor sweep described by a config file");
    run->add_option("config", config_path, "experiment config (JSON)")->required();

    std::string result_dir;
    CLI::App* rep = app.add_subcommand("report", "summary tables for a finished sweep directory");
    rep->add_option("dir", result_dir, "sweep output directory")->required();

    std::string jsonl_path;
    CLI::App* ins = app.add_subcommand("inspect", "one line per run record of a runs.jsonl");
    ins->add_option("jsonl", jsonl_path, "runs.jsonl path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const ddbench::ExperimentConfig config = ddbench::load_config(config_path);
            const ddbench::SweepOutcome outcome = ddbench::run_sweep(config);
            std::cout << "cells: " << outcome.cells_total << ", failed: " << outcome.cells_failed
                      << ", output: " << config.output_dir << "\n";
            return outcome.cells_failed == 0 ? 0 : 1;
        }
        if (rep->parsed()) {
            std::cout << ddbench::report(result_dir);
            return 0;
        }
        if (ins->parsed()) {
            std::cout << ddbench::inspect(jsonl_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
