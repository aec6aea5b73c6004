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

#include "fpqsim/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace fpqsim {

const char* to_string(OracleMode m) {
    switch (m) {
        case OracleMode::kExact: return "exact";
        case OracleMode::kPea: return "pea";
        case OracleMode::kPeaBoosted: return "pea_boosted";
    }
    return "?";
}

const char* to_string(MeasurementMode m) {
    return m == MeasurementMode::kExactProjector ? "exact_projector" : "pea_marked";
}

const char* to_string(RunPolicy p) {
    return p == RunPolicy::kStrict ? "strict" : "experiment";
}

OracleMode oracle_mode_from_string(const std::string& s) {
    if (s == "exact") return OracleMode::kExact;
    if (s == "pea") return OracleMode::kPea;
    if (s == "pea_boosted") return OracleMode::kPeaBoosted;
    throw std::invalid_argument("unknown oracle mode: " + s);
}

MeasurementMode measurement_mode_from_string(const std::string& s) {
    if (s == "exact_projector") return MeasurementMode::kExactProjector;
    if (s == "pea_marked") return MeasurementMode::kPeaMarked;
    throw std::invalid_argument("unknown measurement mode: " + s);
}

RunPolicy run_policy_from_string(const std::string& s) {
    if (s == "strict") return RunPolicy::kStrict;
    if (s == "experiment") return RunPolicy::kExperiment;
    throw std::invalid_argument("unknown run policy: " + s);
}

void EvolutionConfig::validate(const InterpolationProblem& problem) const {
    if (steps < 1) {
        throw std::invalid_argument("config: steps must be positive");
    }
    if (fpqs_level < 0 || fpqs_level > 8) {
        throw std::invalid_argument("config: fpqs_level must be in [0, 8]");
    }
    if (needs_pea()) {
        if (!ancilla.has_value()) {
            throw std::invalid_argument("config: pea modes need an ancilla register");
        }
        const double delta = 1.0 / static_cast<double>(steps);
        if (delta > problem.min_gap() / (2.0 * problem.gamma()) + 1e-12) {
            throw std::invalid_argument(
                "config: pea modes require 1/M <= g/(2*Gamma); increase steps");
        }
        ancilla->validate_for_norm(problem.gamma());
        ancilla->require_separation(problem.min_gap());
        if (anchor_repeats < 3) {
            throw std::invalid_argument("config: anchor_repeats must be at least 3");
        }
    }
    if (oracle_mode == OracleMode::kPeaBoosted) {
        if (!boost.has_value()) {
            throw std::invalid_argument("config: pea_boosted needs boost parameters");
        }
        if (!admissible_boost(boost->q) || !admissible_boost(boost->q_prime)) {
            throw std::invalid_argument("config: boost strengths must be in {2, 8, 26}");
        }
    }
}

CompiledSchedule::CompiledSchedule(const InterpolationProblem& problem, int steps)
    : problem_(&problem), steps_(steps) {
    if (steps < 1) {
        throw std::invalid_argument("CompiledSchedule: steps must be positive");
    }
    spectra_.reserve(static_cast<std::size_t>(steps) + 1);
    for (int r = 0; r <= steps; ++r) {
        const double s = static_cast<double>(r) / static_cast<double>(steps);
        SpectralData spec = eig_hermitian(interpolate(problem, s));
        spec.require_nondegenerate_ground("CompiledSchedule");
        spectra_.push_back(std::move(spec));
    }
}

void CompiledSchedule::prepare_pea(const AncillaConfig& cfg) {
    if (!pea_ops_.empty()) {
        return;
    }
    pea_ops_.reserve(static_cast<std::size_t>(steps_) + 1);
    for (int r = 0; r <= steps_; ++r) {
        const double s = static_cast<double>(r) / static_cast<double>(steps_);
        pea_ops_.push_back(std::make_shared<const PhaseEstimationOp>(
            interpolate(*problem_, s), cfg, problem_->gamma()));
    }
}

const SpectralData& CompiledSchedule::spectrum_at(int r) const {
    return spectra_.at(static_cast<std::size_t>(r));
}

const State& CompiledSchedule::ground_at(int r) const {
    return spectrum_at(r).eigenvectors[0];
}

std::shared_ptr<const PhaseEstimationOp> CompiledSchedule::pea_at(int r) const {
    if (pea_ops_.empty()) {
        throw std::logic_error("CompiledSchedule: pea ops not prepared");
    }
    return pea_ops_.at(static_cast<std::size_t>(r));
}

namespace {

struct StepOutcome {
    bool ground = false;
    State state;
    int restarts = 0;
    bool exhausted = false;
};

/// Drives one step: level-n token sequence (with in-step retries on failed
/// post-selections) followed by the step measurement.
StepOutcome drive_step(const CompiledSchedule& schedule, const EvolutionConfig& config,
                       int r, const State& start, const QuerySequence& seq,
                       std::optional<std::int64_t> anchor, CostLedger& ledger,
                       RandomStream& rng) {
    const InterpolationProblem& problem = schedule.problem();
    StepOutcome out;
    out.state = start;

    std::optional<SelectiveOracle> oracle;
    std::optional<MarkedSet> marked;
    if (config.needs_pea()) {
        const AncillaConfig& cfg = *config.ancilla;
        const int width = cfg.marked_width(problem.min_gap());
        const double drift = static_cast<double>(cfg.dim()) * cfg.t *
                             problem.gamma() / static_cast<double>(config.steps);
        if (width / 2 < 2 + static_cast<int>(std::ceil(drift)) + 2) {
            throw std::invalid_argument(
                "evolution: marked window cannot cover anchor slack and step drift; "
                "increase l or the step count");
        }
        marked = MarkedSet::centered(*anchor, width, cfg.l);
    }
    if (config.fpqs_level > 0) {
        if (config.oracle_mode == OracleMode::kExact) {
            oracle = SelectiveOracle::exact(schedule.ground_at(r - 1),
                                            schedule.ground_at(r));
        } else {
            const double eta =
                eta_bounds(*config.ancilla, problem.min_gap()).eta_excited;
            oracle = SelectiveOracle::pea(schedule.pea_at(r - 1), schedule.pea_at(r),
                                          *marked, *marked,
                                          config.oracle_mode == OracleMode::kPeaBoosted
                                              ? config.boost
                                              : std::nullopt,
                                          eta, &ledger);
        }
    }

    for (int attempt = 0; attempt <= config.max_step_restarts; ++attempt) {
        State current = out.state;
        if (config.fpqs_level > 0) {
            SequenceResult res = apply_sequence(seq, current, *oracle, rng);
            ledger.oracle_queries += res.queries_used;
            if (!res.ok) {
                ledger.restarts += 1;
                out.restarts += 1;
                out.state = std::move(res.state);
                continue;
            }
            current = std::move(res.state);
        }

        ledger.measurements += 1;
        if (config.measurement_mode == MeasurementMode::kExactProjector) {
            MeasurementOutcome m =
                measure_in_basis(current, schedule.spectrum_at(r).eigenvectors, rng);
            out.ground = m.outcome == 0;
            out.state = std::move(m.state);
        } else {
            PeaMeasurementOutcome m =
                pea_measurement(current, *schedule.pea_at(r), *marked, rng, &ledger);
            out.ground = m.in_ground;
            out.state = std::move(m.state);
        }
        return out;
    }
    out.exhausted = true;
    return out;
}

RunResult run_evolution(const CompiledSchedule& schedule, const EvolutionConfig& config,
                        RandomStream& rng) {
    const InterpolationProblem& problem = schedule.problem();
    config.validate(problem);
    const int steps = config.steps;
    const QuerySequence seq = QuerySequence::build(config.fpqs_level);

    RunResult result;
    result.config = config;
    result.instance = InstanceInfo{problem.family(), problem.dim(), problem.seed(),
                                   problem.gamma(), problem.min_gap()};

    bool completed = false;
    State state = schedule.ground_at(0);
    for (int run_attempt = 0; run_attempt <= config.max_run_restarts; ++run_attempt) {
        state = schedule.ground_at(0);
        result.per_step.clear();
        bool failed_hard = false;
        bool failed_step = false;

        for (int r = 1; r <= steps; ++r) {
            std::optional<std::int64_t> anchor;
            if (config.needs_pea()) {
                anchor = estimate_anchor(state, *schedule.pea_at(r - 1),
                                         config.anchor_repeats, rng, &result.ledger);
            }
            StepOutcome step = drive_step(schedule, config, r, state, seq, anchor,
                                          result.ledger, rng);
            if (step.exhausted) {
                failed_hard = true;
                break;
            }
            result.per_step.push_back(
                StepRecord{r, step.ground, anchor.value_or(-1), step.restarts});
            state = std::move(step.state);
            if (!step.ground) {
                failed_step = true;
                break;
            }
        }

        if (!failed_hard && !failed_step) {
            completed = true;
            break;
        }
        if (config.policy == RunPolicy::kStrict || failed_hard) {
            break;
        }
        result.ledger.restarts += 1;  // experiment mode: whole-run restart
    }

    result.final_fidelity = fidelity(schedule.ground_at(steps), state);
    if (config.oracle_mode == OracleMode::kExact &&
        config.measurement_mode == MeasurementMode::kExactProjector) {
        result.success = completed && result.final_fidelity >= config.success_fidelity;
    } else {
        // Pea modes: settle success with one exact projective measurement
        // against the final spectrum.
        if (completed) {
            result.ledger.measurements += 1;
            MeasurementOutcome m = measure_in_basis(
                state, schedule.spectrum_at(steps).eigenvectors, rng);
            result.success = m.outcome == 0;
        } else {
            result.success = false;
        }
    }
    return result;
}

}  // namespace

RunResult childs_run(const InterpolationProblem& problem, const EvolutionConfig& config,
                     RandomStream& rng) {
    EvolutionConfig baseline = config;
    baseline.fpqs_level = 0;
    return fpqs_run(problem, baseline, rng);
}

RunResult fpqs_run(const InterpolationProblem& problem, const EvolutionConfig& config,
                   RandomStream& rng) {
    CompiledSchedule schedule(problem, config.steps);
    if (config.needs_pea()) {
        if (!config.ancilla.has_value()) {
            throw std::invalid_argument("config: pea modes need an ancilla register");
        }
        schedule.prepare_pea(*config.ancilla);
    }
    return fpqs_run(schedule, config, rng);
}

RunResult fpqs_run(const CompiledSchedule& schedule, const EvolutionConfig& config,
                   RandomStream& rng) {
    if (config.steps != schedule.steps()) {
        throw std::invalid_argument("fpqs_run: schedule step count mismatch");
    }
    return run_evolution(schedule, config, rng);
}

PeaMeasurementOutcome pea_measurement(const State& state, const PhaseEstimationOp& pea,
                                      const MarkedSet& marked, RandomStream& rng,
                                      CostLedger* ledger) {
    Vector psi = tensor(state, State::uniform(pea.config().dim())).amplitudes();
    pea.apply_inplace(psi, false);
    AncillaReadout readout = read_out_ancilla(psi, state.dim(), rng);
    if (ledger != nullptr) {
        ledger->charge_pea_runs(1, pea.config().l);
    }
    return PeaMeasurementOutcome{marked.contains(readout.outcome),
                                 std::move(readout.system), readout.outcome};
}

PeaMeasurementOutcome pea_measurement(const State& state, const HermitianOp& h,
                                      const AncillaConfig& cfg, std::int64_t anchor,
                                      double gap, RandomStream& rng,
                                      CostLedger* ledger) {
    const PhaseEstimationOp pea(h, cfg);
    const MarkedSet marked = MarkedSet::centered(anchor, cfg.marked_width(gap), cfg.l);
    return pea_measurement(state, pea, marked, rng, ledger);
}

double predicted_success_bound(double hardness, int steps, int q) {
    const double ratio = hardness / static_cast<double>(steps);
    if (ratio >= 1.0) {
        return 0.0;
    }
    const double per_step = 1.0 - std::pow(ratio, 2.0 * (q + 1.0));
    return std::pow(per_step, static_cast<double>(steps));
}

ParameterChoice choose_parameters(const InterpolationProblem& problem,
                                  double target_success) {
    if (!(target_success > 0.0 && target_success < 1.0)) {
        throw std::invalid_argument("choose_parameters: target must lie in (0, 1)");
    }
    const double x = problem.hardness();
    if (!(x > 1.0)) {
        throw std::invalid_argument("choose_parameters: gamma/g must exceed 1");
    }

    static constexpr int kAdmissible[] = {2, 8, 26, 80, 242};
    const double q_star = std::max(2.0, 0.5 * std::log(x));
    int q = kAdmissible[0];
    int level = 1;
    double best = std::abs(std::log(q_star) - std::log(static_cast<double>(q)));
    for (int i = 1; i < 5; ++i) {
        const double dist =
            std::abs(std::log(q_star) - std::log(static_cast<double>(kAdmissible[i])));
        if (dist < best) {
            best = dist;
            q = kAdmissible[i];
            level = i + 1;
        }
    }

    ParameterChoice choice;
    choice.q = q;
    choice.level = level;
    const int boost_q = std::min(q, 26);
    choice.boost = BoostPair{boost_q, boost_q};

    const double exponent = 1.0 + 1.0 / (2.0 * static_cast<double>(q));
    int steps = static_cast<int>(std::ceil(std::pow(x, exponent)));
    steps = std::max(steps, 2);
    // Raise M only when the predicted bound misses the target.
    while (predicted_success_bound(x, steps, q) < target_success) {
        steps += std::max(1, steps / 20);
        if (steps > 100'000'000) {
            throw std::runtime_error("choose_parameters: target unreachable");
        }
    }
    choice.steps = steps;
    choice.predicted_success = predicted_success_bound(x, steps, q);
    choice.predicted_queries = static_cast<std::int64_t>(q) * steps;
    return choice;
}

CostReport run_time_accounting(const RunResult& result,
                               const InterpolationProblem& problem) {
    CostReport report;
    report.hardness = problem.hardness();
    report.selective_count = result.ledger.oracle_queries;
    report.pea_runs = result.ledger.pea_runs;
    report.u_applications = result.ledger.u_applications;
    report.measurements = result.ledger.measurements;
    report.restarts = result.ledger.restarts;
    if (result.ledger.oracle_queries > 0) {
        report.pea_runs_per_selective =
            static_cast<double>(result.ledger.pea_runs) /
            static_cast<double>(result.ledger.oracle_queries);
    }
    if (result.config.ancilla.has_value()) {
        report.u_per_pea = std::int64_t{1} << result.config.ancilla->l;
    }
    const double x = report.hardness;
    const double lx = std::log(x);
    report.reference_queries = x * lx;
    report.reference_time = x * x * lx * lx * lx * lx;
    if (report.reference_time > 0.0) {
        report.time_ratio =
            static_cast<double>(report.u_applications) / report.reference_time;
    }
    return report;
}

double round_serialized(double v) {
    if (!std::isfinite(v) || v == 0.0) {
        return v == 0.0 ? 0.0 : v;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string run_result_to_json(const RunResult& result) {
    nlohmann::json doc;
    nlohmann::json cfg;
    cfg["M"] = result.config.steps;
    cfg["fpqs_level"] = result.config.fpqs_level;
    cfg["oracle_mode"] = to_string(result.config.oracle_mode);
    cfg["measurement_mode"] = to_string(result.config.measurement_mode);
    cfg["policy"] = to_string(result.config.policy);
    cfg["seed"] = result.config.seed;
    if (result.config.boost.has_value()) {
        cfg["boost"] = {result.config.boost->q, result.config.boost->q_prime};
    } else {
        cfg["boost"] = nullptr;
    }
    if (result.config.ancilla.has_value()) {
        cfg["ancilla"] = {{"l", result.config.ancilla->l},
                          {"t", round_serialized(result.config.ancilla->t)}};
    } else {
        cfg["ancilla"] = nullptr;
    }
    doc["config"] = cfg;

    doc["instance"] = {{"family", result.instance.family},
                       {"dim", result.instance.dim},
                       {"seed", result.instance.seed},
                       {"gamma", round_serialized(result.instance.gamma)},
                       {"min_gap", round_serialized(result.instance.min_gap)}};

    doc["success"] = result.success;
    doc["final_fidelity"] = round_serialized(result.final_fidelity);
    doc["ledger"] = {{"u_applications", result.ledger.u_applications},
                     {"oracle_queries", result.ledger.oracle_queries},
                     {"measurements", result.ledger.measurements},
                     {"pea_runs", result.ledger.pea_runs},
                     {"restarts", result.ledger.restarts}};

    nlohmann::json steps = nlohmann::json::array();
    for (const StepRecord& s : result.per_step) {
        steps.push_back({{"step", s.index},
                         {"success", s.success},
                         {"anchor", s.anchor},
                         {"restarts", s.restarts}});
    }
    doc["per_step"] = steps;
    return doc.dump();
}

}  // namespace fpqsim
