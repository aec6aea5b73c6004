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

#include "fit.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include <fpqsim/evolution.hpp>

namespace fpqsim::bench {

namespace {

using nlohmann::json;

struct CellStats {
    int trials = 0;
    int successes = 0;
    double u_apps = 0.0;
};

struct InstanceKey {
    std::string family;
    std::int64_t dim;
    std::uint64_t seed;
    double hardness;

    bool operator<(const InstanceKey& other) const {
        return std::tie(family, dim, seed, hardness) <
               std::tie(other.family, other.dim, other.seed, other.hardness);
    }
};

}  // namespace

FitReport log_log_fit(std::vector<double> x, std::vector<double> y, std::string model) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit: x and y lengths differ");
    }
    if (x.size() < 4) {
        throw std::invalid_argument("fit: need at least 4 points");
    }
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw std::invalid_argument("fit: log-log fit needs positive points");
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) {
        throw std::invalid_argument("fit: degenerate x values");
    }
    FitReport report;
    report.model = std::move(model);
    report.slope = (dn * sxy - sx * sy) / denom;
    report.intercept = (sy - report.slope * sx) / dn;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / dn;
    for (std::size_t i = 0; i < n; ++i) {
        const double ly = std::log(y[i]);
        const double fit = report.intercept + report.slope * std::log(x[i]);
        ss_res += (ly - fit) * (ly - fit);
        ss_tot += (ly - mean_y) * (ly - mean_y);
    }
    report.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    report.x = std::move(x);
    report.y = std::move(y);
    return report;
}

FitReport fit_results_file(const std::string& path, const std::string& model,
                           double threshold, bool strip_logs) {
    if (model != "childs_M" && model != "fpqs_M" && model != "cost_T") {
        throw std::invalid_argument("fit: unknown model '" + model + "'");
    }
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("fit: cannot open results file " + path);
    }

    // (instance, M) -> aggregated stats for the records the model selects.
    std::map<InstanceKey, std::map<int, CellStats>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const json rec = json::parse(line);
        const int level = rec.at("config").at("fpqs_level").get<int>();
        const std::string mode = rec.at("config").at("oracle_mode").get<std::string>();
        if (model == "childs_M" && level != 0) {
            continue;
        }
        if (model == "fpqs_M" && level < 1) {
            continue;
        }
        if (model == "cost_T" && mode == "exact") {
            continue;
        }
        const json& inst = rec.at("instance");
        const double gamma = inst.at("gamma").get<double>();
        const double gap = inst.at("min_gap").get<double>();
        InstanceKey key{inst.at("family").get<std::string>(),
                        inst.at("dim").get<std::int64_t>(),
                        inst.at("seed").get<std::uint64_t>(), gamma / gap};
        CellStats& cell = table[key][rec.at("config").at("M").get<int>()];
        cell.trials += 1;
        cell.successes += rec.at("success").get<bool>() ? 1 : 0;
        cell.u_apps += rec.at("ledger").at("u_applications").get<double>();
    }

    std::vector<double> xs, ys;
    for (const auto& [key, cells] : table) {
        for (const auto& [m, stats] : cells) {  // ascending M
            const double rate =
                static_cast<double>(stats.successes) / static_cast<double>(stats.trials);
            if (rate >= threshold) {
                xs.push_back(key.hardness);
                if (model == "cost_T") {
                    double y = stats.u_apps / static_cast<double>(stats.trials);
                    if (strip_logs) {
                        const double lx = std::log(key.hardness);
                        y /= lx * lx * lx * lx;
                    }
                    ys.push_back(y);
                } else {
                    ys.push_back(static_cast<double>(m));
                }
                break;
            }
        }
    }
    return log_log_fit(std::move(xs), std::move(ys), model);
}

std::string fit_report_to_json(const FitReport& report) {
    json doc;
    doc["model"] = report.model;
    doc["slope"] = round_serialized(report.slope);
    doc["intercept"] = round_serialized(report.intercept);
    doc["r_squared"] = round_serialized(report.r_squared);
    json xs = json::array(), ys = json::array();
    for (double v : report.x) {
        xs.push_back(round_serialized(v));
    }
    for (double v : report.y) {
        ys.push_back(round_serialized(v));
    }
    doc["x"] = xs;
    doc["y"] = ys;
    doc["points"] = report.x.size();
    return doc.dump();
}

}  // namespace fpqsim::bench
