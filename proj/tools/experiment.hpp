// Copyright 2026 The fpqsim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <fpqsim/evolution.hpp>

namespace fpqsim::bench {

/**
 * One sweep description parsed from a JSON experiment file:
 *
 * {
 *   "version": 1,
 *   "family": "grover" | "random" | "two_level",
 *   "family_params": { ... },               // per-family, see README
 *   "grid": {
 *     "M": [...], "fpqs_level": [...], "oracle_mode": [...],
 *     "l": [...],                            // pea modes only
 *     "boost": [[q, q'], ...],               // pea_boosted only
 *     "measurement_mode": [...],             // default exact_projector
 *     "policy": [...]                        // default strict
 *   },
 *   "trials": 100,
 *   "seed_base": 1,
 *   "output": "path/prefix"
 * }
 *
 * Cells are the cartesian product of instances and grid axes in declaration
 * order; the trial seed is seed_base + cell_index * 10^6 + trial.
 */
struct ExperimentSpec {
    std::string family;
    std::vector<InterpolationProblem> instances;
    std::vector<int> steps;
    std::vector<int> levels;
    std::vector<OracleMode> oracle_modes;
    std::vector<int> ls;
    std::vector<BoostPair> boosts;
    std::vector<MeasurementMode> measurement_modes;
    std::vector<RunPolicy> policies;
    int trials = 1;
    std::uint64_t seed_base = 0;
    std::string output;

    static ExperimentSpec parse_file(const std::string& path);
    static ExperimentSpec parse_json(const std::string& doc);
};

struct SweepCell {
    std::size_t instance_index = 0;
    EvolutionConfig config;
};

/// Cells in deterministic enumeration order. Throws std::invalid_argument
/// (naming the condition) if any cell violates a module precondition.
std::vector<SweepCell> enumerate_and_validate(const ExperimentSpec& spec);

std::uint64_t derive_seed(std::uint64_t seed_base, std::size_t cell_index, int trial);

struct SweepOutput {
    std::string jsonl_path;
    std::string csv_path;
    std::size_t cells = 0;
    std::size_t runs = 0;
};

/// Executes the sweep. Trials may run on FPQSIM_THREADS workers; results are
/// written in (cell, trial) order regardless of completion order, so the
/// output bytes do not depend on the thread count.
SweepOutput run_experiment(const ExperimentSpec& spec);

}  // namespace fpqsim::bench
