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

#include <memory>
#include <optional>

#include "fpqsim/cost.hpp"
#include "fpqsim/fpqs.hpp"
#include "fpqsim/pea.hpp"

namespace fpqsim {

/// Phase kick on the marked ancilla window of a composite register
/// (or on its complement): multiplies matching basis states by e^{i omega}.
class AncillaMarkedPhase final : public LinearUnitary {
  public:
    AncillaMarkedPhase(Eigen::Index system_dim, MarkedSet marked, double omega,
                       bool complement = false);
    Eigen::Index dim() const override { return system_dim_ * marked_.ancilla_dim(); }
    void apply_inplace(Vector& psi, bool adjoint) const override;

  private:
    Eigen::Index system_dim_;
    MarkedSet marked_;
    double omega_;
    bool complement_;
};

/// Selective rotation of the uniform ancilla state |e> on a composite
/// register, applied as a rank-1 update per system row.
class AncillaUniformRotation final : public LinearUnitary {
  public:
    AncillaUniformRotation(Eigen::Index system_dim, int l, double omega);
    Eigen::Index dim() const override { return system_dim_ * (Eigen::Index{1} << l_); }
    void apply_inplace(Vector& psi, bool adjoint) const override;

  private:
    Eigen::Index system_dim_;
    int l_;
    double omega_;
};

struct SelectiveOutcome {
    bool success = false;
    /// On success: the post-selected system state (system dimension).
    /// On failure: the renormalized composite state, kept for diagnostics.
    State state;
    double success_probability = 0.0;
};

/**
 * Approximate selective rotation of the unknown ground state through a
 * discriminator b acting on system (x) ancilla: attach the uniform ancilla
 * state, apply b, kick the marked window by omega, apply b^dag, and
 * post-select the ancilla back onto the uniform state. On success the
 * system carries e^{i omega} on its ground component up to the
 * discriminator's accuracy eta.
 */
SelectiveOutcome approx_selective(const State& system, const LinearUnitary& b,
                                  const MarkedSet& marked, double omega,
                                  RandomStream& rng);
SelectiveOutcome approx_selective(const State& system, const UnitaryOp& b,
                                  const MarkedSet& marked, double omega,
                                  RandomStream& rng);

/// Admissible boost strengths: 3^n - 1 applications per layer.
bool admissible_boost(int q);

/**
 * First boost layer: fixed-point search of the discriminator's ancilla
 * response toward the marked window, driving ground leakage eta0 to
 * O(eta0^(q+1)) at the price of sqrt(q+1) growth in excited capture.
 * `eta` is the caller's bound on the discriminator accuracy; requires
 * q in {2, 8, 26} and (q+1) eta^2 <= 0.2.
 */
std::shared_ptr<const LinearUnitary> boosted_discriminator(
    std::shared_ptr<const LinearUnitary> b, const MarkedSet& marked, int q, double eta);

/**
 * Second boost layer over boosted_discriminator's output: fixed-point search
 * toward the unmarked window, shrinking excited capture to
 * (sqrt(q+1) eta)^(q'+1) while keeping ground leakage small. `eta` is the
 * base discriminator's accuracy, as in the first layer; requires
 * q' in {2, 8, 26} and (q' + 1) eta^2 <= 0.2.
 */
std::shared_ptr<const LinearUnitary> boosted_discriminator2(
    std::shared_ptr<const LinearUnitary> b_q, const MarkedSet& marked, int q_prime,
    double eta);

/// Dense forms of the two layers (test-scale registers).
UnitaryOp boosted_b(const UnitaryOp& b, const MarkedSet& marked, int q, double eta);
UnitaryOp boosted_b2(const UnitaryOp& b_q, const MarkedSet& marked, int q_prime,
                     double eta);

/**
 * Synthetic discriminator with prescribed per-eigenstate marked amplitudes:
 * block j maps |e> to gamma[j] |m_j> + sqrt(1 - gamma[j]^2) |m_j_perp> with
 * deterministic in-window and out-of-window directions. Isolates the boost
 * algebra from spectral leakage.
 */
UnitaryOp make_synthetic_discriminator(const Eigen::VectorXd& gamma,
                                       const MarkedSet& marked);

/// Marked-window amplitude of block j's ancilla response: || P_A (b |j>|e>) ||.
double marked_amplitude(const LinearUnitary& b, const MarkedSet& marked,
                        Eigen::Index system_dim, Eigen::Index j);

struct AncillaReadout {
    std::int64_t outcome = 0;
    State system;  ///< collapsed system register, ancilla discarded
};

/// Samples a computational-basis measurement of the ancilla factor and
/// collapses the system register accordingly.
AncillaReadout read_out_ancilla(const Vector& composite, Eigen::Index system_dim,
                                RandomStream& rng);

/**
 * Locates the ground eigenphase: runs phase estimation on a register that is
 * (approximately) the ground state of the estimated operator, reads the
 * ancilla in the computational basis `repeats` times, and returns the
 * wrap-aware median outcome, which lands within +/-2 of the true anchor with
 * overwhelming probability. The register collapses per shot; an exact
 * eigenstate is left untouched. Requires repeats >= 3.
 */
std::int64_t estimate_anchor(State& system, const PhaseEstimationOp& pea, int repeats,
                             RandomStream& rng, CostLedger* ledger);

enum class OracleMode { kExact, kPea, kPeaBoosted };

struct BoostPair {
    int q = 2;
    int q_prime = 2;
};

/// Model charge, in phase-estimation passes, of one selective transformation.
std::int64_t pea_runs_per_selective(OracleMode mode, std::optional<BoostPair> boost);

/**
 * Token provider for the fixed-point driver of one evolution step, mapping
 * {source, target, adjoints} to concrete operators. Exact mode rotates about
 * eigensolver axes; the pea modes run the approx_selective pipeline against
 * marked windows derived from an anchor estimate, boosted when configured.
 * Every pea-mode token charges the ledger by its model cost.
 */
class SelectiveOracle final : public RotationProvider {
  public:
    static SelectiveOracle exact(State source_axis, State target_axis,
                                 double angle = kFixedPointAngle);

    static SelectiveOracle pea(std::shared_ptr<const PhaseEstimationOp> source_op,
                               std::shared_ptr<const PhaseEstimationOp> target_op,
                               MarkedSet marked_source, MarkedSet marked_target,
                               std::optional<BoostPair> boost, double eta,
                               CostLedger* ledger);

    Outcome apply_token(RotationToken token, const State& psi, RandomStream& rng) override;

    OracleMode mode() const { return mode_; }

  private:
    SelectiveOracle() = default;

    OracleMode mode_ = OracleMode::kExact;
    double angle_ = kFixedPointAngle;
    std::optional<State> source_axis_;
    std::optional<State> target_axis_;

    std::shared_ptr<const LinearUnitary> source_disc_;
    std::shared_ptr<const LinearUnitary> target_disc_;
    std::optional<MarkedSet> marked_source_;
    std::optional<MarkedSet> marked_target_;
    std::optional<BoostPair> boost_;
    int l_ = 0;
    CostLedger* ledger_ = nullptr;
};

/**
 * Builds the oracle for the step from H(s) to H(s + delta). Exact mode
 * diagonalizes both endpoints; pea modes build phase-estimation
 * discriminators with a spectrum shift of gamma (uniform over the family, so
 * anchors drift only with the ground energy) and marked windows of width
 * floor(2^(l-1) g t) centered on `anchor`. Throws in pea modes when the
 * anchor is missing or the window cannot cover the estimate and drift slack.
 */
SelectiveOracle make_oracle(const InterpolationProblem& problem, double s, double delta,
                            const AncillaConfig& cfg, OracleMode mode,
                            std::optional<BoostPair> boost,
                            std::optional<std::int64_t> anchor, CostLedger* ledger);

}  // namespace fpqsim
