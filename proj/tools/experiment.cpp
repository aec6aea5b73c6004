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

#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace fpqsim::bench {

namespace {

using nlohmann::json;

int thread_count_from_env() {
    const char* raw = std::getenv("FPQSIM_THREADS");
    if (raw == nullptr) {
        return 1;
    }
    const int n = std::atoi(raw);
    return n < 1 ? 1 : n;
}

std::vector<InterpolationProblem> build_instances(const std::string& family,
                                                  const json& params) {
    std::vector<InterpolationProblem> out;
    if (family == "grover") {
        const std::uint64_t seed = params.value("instance_seed", 7ull);
        for (int n : params.at("n_qubits").get<std::vector<int>>()) {
            out.push_back(make_grover_instance(n, seed));
        }
    } else if (family == "random") {
        const Eigen::Index dim = params.at("dim").get<Eigen::Index>();
        const double floor = params.at("min_gap_floor").get<double>();
        const int count = params.value("count", 1);
        const std::uint64_t seed = params.value("instance_seed", 100ull);
        for (int i = 0; i < count; ++i) {
            out.push_back(make_random_instance(dim, floor, seed + static_cast<std::uint64_t>(i)));
        }
    } else if (family == "two_level") {
        for (double gap : params.at("gaps").get<std::vector<double>>()) {
            out.push_back(make_two_level_instance(gap));
        }
    } else {
        throw std::invalid_argument("experiment: unknown family '" + family + "'");
    }
    if (out.empty()) {
        throw std::invalid_argument("experiment: family parameters yield no instances");
    }
    return out;
}

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

ExperimentSpec ExperimentSpec::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("experiment: cannot open spec file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

ExperimentSpec ExperimentSpec::parse_json(const std::string& doc) {
    const json j = json::parse(doc);
    if (j.value("version", 0) != 1) {
        throw std::invalid_argument("experiment: unsupported or missing spec version");
    }
    ExperimentSpec spec;
    spec.family = j.at("family").get<std::string>();
    spec.instances = build_instances(spec.family, j.at("family_params"));

    const json& grid = j.at("grid");
    spec.steps = grid.at("M").get<std::vector<int>>();
    spec.levels = grid.at("fpqs_level").get<std::vector<int>>();
    for (const auto& m : grid.at("oracle_mode")) {
        spec.oracle_modes.push_back(oracle_mode_from_string(m.get<std::string>()));
    }
    if (grid.contains("l")) {
        spec.ls = grid.at("l").get<std::vector<int>>();
    }
    if (grid.contains("boost")) {
        for (const auto& b : grid.at("boost")) {
            spec.boosts.push_back(BoostPair{b.at(0).get<int>(), b.at(1).get<int>()});
        }
    }
    if (grid.contains("measurement_mode")) {
        for (const auto& m : grid.at("measurement_mode")) {
            spec.measurement_modes.push_back(
                measurement_mode_from_string(m.get<std::string>()));
        }
    } else {
        spec.measurement_modes.push_back(MeasurementMode::kExactProjector);
    }
    if (grid.contains("policy")) {
        for (const auto& p : grid.at("policy")) {
            spec.policies.push_back(run_policy_from_string(p.get<std::string>()));
        }
    } else {
        spec.policies.push_back(RunPolicy::kStrict);
    }

    spec.trials = j.at("trials").get<int>();
    spec.seed_base = j.at("seed_base").get<std::uint64_t>();
    spec.output = j.at("output").get<std::string>();

    if (spec.steps.empty() || spec.levels.empty() || spec.oracle_modes.empty()) {
        throw std::invalid_argument("experiment: grid axes must be nonempty");
    }
    if (spec.trials < 1) {
        throw std::invalid_argument("experiment: trials must be at least 1");
    }
    if (spec.output.empty()) {
        throw std::invalid_argument("experiment: output prefix missing");
    }
    return spec;
}

std::vector<SweepCell> enumerate_and_validate(const ExperimentSpec& spec) {
    std::vector<SweepCell> cells;
    const bool any_pea =
        std::any_of(spec.oracle_modes.begin(), spec.oracle_modes.end(),
                    [](OracleMode m) { return m != OracleMode::kExact; }) ||
        std::any_of(spec.measurement_modes.begin(), spec.measurement_modes.end(),
                    [](MeasurementMode m) { return m == MeasurementMode::kPeaMarked; });
    if (any_pea && spec.ls.empty()) {
        throw std::invalid_argument("experiment: pea modes present but grid.l missing");
    }

    const std::vector<int> ls = spec.ls.empty() ? std::vector<int>{0} : spec.ls;
    const std::vector<BoostPair> boosts =
        spec.boosts.empty() ? std::vector<BoostPair>{BoostPair{2, 2}} : spec.boosts;

    for (std::size_t pi = 0; pi < spec.instances.size(); ++pi) {
        const InterpolationProblem& problem = spec.instances[pi];
        for (int m : spec.steps) {
            for (int level : spec.levels) {
                for (OracleMode mode : spec.oracle_modes) {
                    for (int l : ls) {
                        for (const BoostPair& boost : boosts) {
                            for (MeasurementMode meas : spec.measurement_modes) {
                                for (RunPolicy policy : spec.policies) {
                                    EvolutionConfig config;
                                    config.steps = m;
                                    config.fpqs_level = level;
                                    config.oracle_mode = mode;
                                    config.measurement_mode = meas;
                                    config.policy = policy;
                                    if (mode == OracleMode::kPeaBoosted) {
                                        config.boost = boost;
                                    }
                                    if (mode != OracleMode::kExact ||
                                        meas == MeasurementMode::kPeaMarked) {
                                        config.ancilla =
                                            AncillaConfig::for_problem(problem, l);
                                    }
                                    config.validate(problem);
                                    cells.push_back(SweepCell{pi, config});
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return cells;
}

std::uint64_t derive_seed(std::uint64_t seed_base, std::size_t cell_index, int trial) {
    return seed_base + static_cast<std::uint64_t>(cell_index) * 1'000'000ull +
           static_cast<std::uint64_t>(trial);
}

SweepOutput run_experiment(const ExperimentSpec& spec) {
    const std::vector<SweepCell> cells = enumerate_and_validate(spec);

    const std::filesystem::path prefix(spec.output);
    if (prefix.has_parent_path()) {
        std::filesystem::create_directories(prefix.parent_path());
    }
    SweepOutput out;
    out.jsonl_path = spec.output + ".jsonl";
    out.csv_path = spec.output + ".csv";
    std::ofstream jsonl(out.jsonl_path);
    std::ofstream csv(out.csv_path);
    if (!jsonl || !csv) {
        throw std::runtime_error("experiment: cannot open output files under " +
                                 spec.output);
    }
    csv << "family,N,gamma,g,M,n,mode,trials,success_rate,mean_u_apps,mean_queries\n";

    const int workers = thread_count_from_env();
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const SweepCell& cell = cells[ci];
        const InterpolationProblem& problem = spec.instances[cell.instance_index];
        CompiledSchedule schedule(problem, cell.config.steps);
        if (cell.config.needs_pea()) {
            schedule.prepare_pea(*cell.config.ancilla);
        }

        std::vector<RunResult> results(static_cast<std::size_t>(spec.trials));
        std::atomic<int> next{0};
        auto work = [&]() {
            while (true) {
                const int trial = next.fetch_add(1);
                if (trial >= spec.trials) {
                    return;
                }
                EvolutionConfig config = cell.config;
                config.seed = derive_seed(spec.seed_base, ci, trial);
                RandomStream rng(config.seed);
                results[static_cast<std::size_t>(trial)] =
                    fpqs_run(schedule, config, rng);
            }
        };
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back(work);
            }
            for (std::thread& th : pool) {
                th.join();
            }
        }

        double successes = 0.0, u_apps = 0.0, queries = 0.0;
        for (const RunResult& r : results) {
            jsonl << run_result_to_json(r) << "\n";
            successes += r.success ? 1.0 : 0.0;
            u_apps += static_cast<double>(r.ledger.u_applications);
            queries += static_cast<double>(r.ledger.oracle_queries);
        }
        const double trials = static_cast<double>(spec.trials);
        csv << problem.family() << ',' << problem.dim() << ','
            << format_sig(round_serialized(problem.gamma())) << ','
            << format_sig(round_serialized(problem.min_gap())) << ','
            << cell.config.steps << ',' << cell.config.fpqs_level << ','
            << to_string(cell.config.oracle_mode) << ',' << spec.trials << ','
            << format_sig(round_serialized(successes / trials)) << ','
            << format_sig(round_serialized(u_apps / trials)) << ','
            << format_sig(round_serialized(queries / trials)) << "\n";
        out.runs += results.size();
    }
    out.cells = cells.size();
    return out;
}

}  // namespace fpqsim::bench
