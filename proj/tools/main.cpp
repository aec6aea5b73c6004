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

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "fit.hpp"
#include "verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kInvalidInput = 2;

int cmd_run(const std::string& spec_path) {
    fpqsim::bench::ExperimentSpec spec;
    std::vector<fpqsim::bench::SweepCell> cells;
    try {
        spec = fpqsim::bench::ExperimentSpec::parse_file(spec_path);
        cells = fpqsim::bench::enumerate_and_validate(spec);
    } catch (const std::exception& e) {
        std::cerr << "invalid experiment spec: " << e.what() << "\n";
        return kInvalidInput;
    }
    try {
        const fpqsim::bench::SweepOutput out = fpqsim::bench::run_experiment(spec);
        std::cout << "ran " << out.runs << " runs over " << out.cells << " cells\n"
                  << "results: " << out.jsonl_path << "\n"
                  << "summary: " << out.csv_path << "\n";
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "experiment failed: " << e.what() << "\n";
        return kRuntimeFailure;
    }
}

int cmd_fit(const std::string& results_path, const std::string& model,
            double threshold, bool strip_logs) {
    try {
        const fpqsim::bench::FitReport report =
            fpqsim::bench::fit_results_file(results_path, model, threshold, strip_logs);
        std::printf("model %s: slope %.6f intercept %.6f r2 %.6f over %zu points\n",
                    report.model.c_str(), report.slope, report.intercept,
                    report.r_squared, report.x.size());
        std::cout << fpqsim::bench::fit_report_to_json(report) << "\n";
        return kOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fit rejected: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return kRuntimeFailure;
    }
}

int cmd_verify(const std::string& suite, const std::string& json_path) {
    std::vector<fpqsim::bench::VerifyRow> rows;
    try {
        rows = fpqsim::bench::run_verify_suite(suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << " (known suites: fpqs, pea, boost, bounds)\n";
        return kInvalidInput;
    }
    bool all = true;
    for (const auto& r : rows) {
        std::printf("[%s] %-32s %s (%s)\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                    r.description.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    const std::string doc = fpqsim::bench::verify_rows_to_json(suite, rows);
    if (json_path == "-") {
        std::cout << doc << "\n";
    } else if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
            std::cerr << "cannot write " << json_path << "\n";
            return kRuntimeFailure;
        }
        out << doc << "\n";
    }
    return all ? kOk : kRuntimeFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fpqsim-bench: sweeps, scaling fits, and property suites for the "
                 "fixed-point ground-state evolution simulator"};
    app.require_subcommand(1);

    std::string spec_path;
    CLI::App* run = app.add_subcommand("run", "execute an experiment spec");
    run->add_option("spec", spec_path, "experiment JSON file")->required();

    std::string results_path, model;
    double threshold = 0.9;
    bool strip_logs = false;
    CLI::App* fit = app.add_subcommand("fit", "log-log scaling fit over results");
    fit->add_option("results", results_path, "results .jsonl file")->required();
    fit->add_option("--model", model, "childs_M | fpqs_M | cost_T")->required();
    fit->add_option("--threshold", threshold, "success-rate threshold (default 0.9)");
    fit->add_flag("--strip-logs", strip_logs,
                  "divide cost_T observables by ln^4(x) before fitting");

    std::string suite, json_path;
    CLI::App* verify = app.add_subcommand("verify", "run a fixed-seed property suite");
    verify->add_option("suite", suite, "fpqs | pea | boost | bounds")->required();
    verify->add_option("--json", json_path, "write JSON rows to a file ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidInput;
    }

    if (run->parsed()) {
        return cmd_run(spec_path);
    }
    if (fit->parsed()) {
        return cmd_fit(results_path, model, threshold, strip_logs);
    }
    return cmd_verify(suite, json_path);
}
