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

namespace fpqsim::bench {

struct FitReport {
    std::string model;
    std::vector<double> x;  ///< hardness values gamma/g
    std::vector<double> y;  ///< step thresholds or operator counts
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of ln y on ln x. Requires >= 4 points with
/// positive coordinates.
FitReport log_log_fit(std::vector<double> x, std::vector<double> y, std::string model);

/**
 * Extracts (hardness, observable) points from a results JSON-lines file and
 * fits them on the log-log scale.
 *
 *  - "childs_M": per instance, the smallest M whose measurement-only
 *    (level 0) success rate reaches `threshold`;
 *  - "fpqs_M": the same over the level >= 1 records;
 *  - "cost_T": per instance, the mean evolution-operator count at the
 *    smallest pea-mode M reaching `threshold`; with `strip_logs`, y is
 *    divided by ln^4 x before fitting.
 */
FitReport fit_results_file(const std::string& path, const std::string& model,
                           double threshold = 0.9, bool strip_logs = false);

std::string fit_report_to_json(const FitReport& report);

}  // namespace fpqsim::bench
