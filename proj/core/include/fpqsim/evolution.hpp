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

#include <optional>
#include <string>
#include <vector>

#include "fpqsim/measurement.hpp"
#include "fpqsim/selective.hpp"

namespace fpqsim {

enum class MeasurementMode { kExactProjector, kPeaMarked };

/**
 * Failure handling. Strict mode ends the run on a failed step measurement,
 * matching the statistics the success bounds describe; experiment mode
 * restarts the whole run from the initial ground state (counted in the
 * ledger) so every trial eventually completes. A failed ancilla
 * post-selection only re-runs the current step's token sequence from the
 * collapsed state in both modes: the driver is a fixed point, so re-running
 * from the near-ground failure state converges again.
 */
enum class RunPolicy { kStrict, kExperiment };

const char* to_string(OracleMode m);
const char* to_string(MeasurementMode m);
const char* to_string(RunPolicy p);
OracleMode oracle_mode_from_string(const std::string& s);
MeasurementMode measurement_mode_from_string(const std::string& s);
RunPolicy run_policy_from_string(const std::string& s);

struct EvolutionConfig {
    int steps = 1;                ///< M; the interpolation step is 1/M
    int fpqs_level = 0;           ///< n; 0 = measurement-only baseline
    OracleMode oracle_mode = OracleMode::kExact;
    std::optional<BoostPair> boost;
    MeasurementMode measurement_mode = MeasurementMode::kExactProjector;
    RunPolicy policy = RunPolicy::kStrict;
    std::uint64_t seed = 0;
    std::optional<AncillaConfig> ancilla;
    int anchor_repeats = 15;
    int max_step_restarts = 64;
    int max_run_restarts = 4096;
    double success_fidelity = 1.0 - 1e-6;

    /// Checks every precondition against the instance (step bound
    /// 1/M <= g/(2 gamma) in pea modes, separation, boost admissibility).
    /// Throws std::invalid_argument with the violated condition.
    void validate(const InterpolationProblem& problem) const;

    bool needs_pea() const {
        return oracle_mode != OracleMode::kExact ||
               measurement_mode == MeasurementMode::kPeaMarked;
    }
};

struct StepRecord {
    int index = 0;          ///< step number r (1-based)
    bool success = false;   ///< step measurement landed on the ground state
    std::int64_t anchor = -1;  ///< anchor estimate used this step (-1 if none)
    int restarts = 0;       ///< in-step post-selection retries
};

struct InstanceInfo {
    std::string family = "custom";
    Eigen::Index dim = 0;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    double min_gap = 0.0;
};

struct RunResult {
    bool success = false;
    double final_fidelity = 0.0;  ///< fidelity to the final ground state at termination
    std::vector<StepRecord> per_step;
    CostLedger ledger;
    EvolutionConfig config;
    InstanceInfo instance;
};

/**
 * Spectra (and, when prepared, phase-estimation ops) of the family sampled
 * at the M + 1 step endpoints s = r/M. Shared read-only across the seeded
 * trials of a sweep cell.
 */
class CompiledSchedule {
  public:
    CompiledSchedule(const InterpolationProblem& problem, int steps);

    /// Builds the per-endpoint phase-estimation ops (shift = gamma, uniform
    /// over the family so anchors drift only with the ground energy).
    void prepare_pea(const AncillaConfig& cfg);

    int steps() const { return steps_; }
    const InterpolationProblem& problem() const { return *problem_; }
    const SpectralData& spectrum_at(int r) const;
    const State& ground_at(int r) const;
    std::shared_ptr<const PhaseEstimationOp> pea_at(int r) const;

  private:
    const InterpolationProblem* problem_;
    int steps_;
    std::vector<SpectralData> spectra_;
    std::vector<std::shared_ptr<const PhaseEstimationOp>> pea_ops_;
};

/// Measurement-only evolution: prepare the initial ground state and measure
/// the family at each step endpoint in turn. Equivalent to fpqs_run with
/// fpqs_level = 0 (identical draws under identical seeds).
RunResult childs_run(const InterpolationProblem& problem, const EvolutionConfig& config,
                     RandomStream& rng);

/// Full evolution: per step, drive toward the next ground state with the
/// level-n fixed-point sequence over the configured oracle, then measure.
RunResult fpqs_run(const InterpolationProblem& problem, const EvolutionConfig& config,
                   RandomStream& rng);
RunResult fpqs_run(const CompiledSchedule& schedule, const EvolutionConfig& config,
                   RandomStream& rng);

struct PeaMeasurementOutcome {
    bool in_ground = false;
    State state;              ///< collapsed system register
    std::int64_t outcome = 0; ///< raw ancilla reading
};

/// Ground-versus-rest measurement approximated by one phase-estimation pass:
/// read the ancilla, report membership of the reading in the marked window,
/// and collapse the system on the reading. Charges one pass.
PeaMeasurementOutcome pea_measurement(const State& state, const PhaseEstimationOp& pea,
                                      const MarkedSet& marked, RandomStream& rng,
                                      CostLedger* ledger);
/// Convenience form building the transform for `h` (spectrum shift ||h||)
/// and the window centered on `anchor` with width floor(2^(l-1) g t).
PeaMeasurementOutcome pea_measurement(const State& state, const HermitianOp& h,
                                      const AncillaConfig& cfg, std::int64_t anchor,
                                      double gap, RandomStream& rng,
                                      CostLedger* ledger = nullptr);

struct ParameterChoice {
    int steps = 0;      ///< M
    int level = 0;      ///< n
    int q = 0;          ///< 3^n - 1
    BoostPair boost;    ///< q' = q, capped at the largest admissible layer
    double predicted_success = 0.0;  ///< per-step-bound product at (M, q)
    std::int64_t predicted_queries = 0;  ///< q * M
};

/**
 * Parameter selection for a target success probability: q is the admissible
 * value (3^n - 1) nearest to ln(gamma/g)/2 in log space, floored at 2, and
 * M = ceil((gamma/g)^(1 + 1/(2q))), raised further only if the predicted
 * success bound at that M falls short of the target. Requires gamma/g > 1
 * and target in (0, 1).
 */
ParameterChoice choose_parameters(const InterpolationProblem& problem,
                                  double target_success);

/// Success lower bound (1 - (x/M)^(2(q+1)))^M used by choose_parameters.
double predicted_success_bound(double hardness, int steps, int q);

/**
 * Ledger decomposition of a completed run against the model's reference
 * scalings (selective count vs x ln x, total evolution-operator applications
 * vs x^2 ln^4 x, x = gamma/g). Pure arithmetic on the counters.
 */
struct CostReport {
    double hardness = 0.0;
    std::int64_t selective_count = 0;
    std::int64_t pea_runs = 0;
    std::int64_t u_applications = 0;
    std::int64_t measurements = 0;
    std::int64_t restarts = 0;
    double pea_runs_per_selective = 0.0;
    std::int64_t u_per_pea = 0;
    double reference_queries = 0.0;
    double reference_time = 0.0;
    double time_ratio = 0.0;
};
CostReport run_time_accounting(const RunResult& result, const InterpolationProblem& problem);

/// One-record JSON document with stable field names; doubles are rounded to
/// 12 significant digits so equal runs serialize byte-identically.
std::string run_result_to_json(const RunResult& result);

/// Rounds to 12 significant digits (the serialization precision).
double round_serialized(double v);

}  // namespace fpqsim
