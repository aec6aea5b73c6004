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

#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fpqsim/operators.hpp"

namespace fpqsim {

inline constexpr double kFixedPointAngle = std::numbers::pi / 3.0;

/**
 * Selective phase rotation of a single state: multiplies `axis` by
 * e^{i angle} and leaves its orthogonal complement pointwise fixed,
 * i.e. I - (1 - e^{i angle}) |axis><axis| (the adjoint when `adjoint`).
 */
struct SelectiveRotation {
    State axis;
    double angle = kFixedPointAngle;
    bool adjoint = false;

    UnitaryOp to_unitary() const;
    /// Rank-1 update, O(dim); equivalent to multiplying by to_unitary().
    void apply_inplace(Vector& psi) const;
    State apply(const State& s) const;
};

/// Dense form of the rotation above. Throws if `axis` is not normalized.
UnitaryOp selective_rotation(const State& axis, double angle, bool adjoint = false);

/**
 * Tokens of the fixed-point search alphabet. `kSource`/`kTarget` are the
 * rotations about the initial and destination axes; uppercase letters in the
 * serialized form denote adjoints. A token sequence is stored in application
 * order (first-applied first).
 *
 * Serialization alphabet: a = kSource, b = kTarget, A = kSourceAdj,
 * B = kTargetAdj.
 */
enum class RotationToken : std::uint8_t { kSource, kTarget, kSourceAdj, kTargetAdj };

RotationToken token_adjoint(RotationToken t);
char token_char(RotationToken t);
RotationToken token_from_char(char c);

/**
 * The unrolled recursion W(0) = identity,
 * W(n+1) = W(n) * R_source * W(n)^dag * R_target * W(n),
 * flattened into a token list of length 3^n - 1. Every kSource token refers
 * to the rotation about the ORIGINAL source axis; the conjugated rotations of
 * the recursion arise structurally from the unrolling, not from re-deriving
 * axes.
 */
class QuerySequence {
  public:
    /// Requires 0 <= level <= 8 (3^8 - 1 = 6560 tokens).
    static QuerySequence build(int level);
    static QuerySequence from_token_string(int level, const std::string& tokens);

    int level() const { return level_; }
    const std::vector<RotationToken>& steps() const { return steps_; }
    std::int64_t query_count() const { return static_cast<std::int64_t>(steps_.size()); }
    std::string to_token_string() const;

  private:
    QuerySequence(int level, std::vector<RotationToken> steps)
        : level_(level), steps_(std::move(steps)) {}
    int level_ = 0;
    std::vector<RotationToken> steps_;
};

/// Number of tokens a level-n sequence uses: 3^n - 1.
std::int64_t queries_for_level(int level);

/// One fixed-point step R_source(target...) — applies the target rotation,
/// then the source rotation, to `source`. With both angles at pi/3 the
/// failure probability 1 - |<target|result>|^2 equals the cube of the
/// initial failure 1 - |<target|source>|^2.
State fpqs_step(const State& source, const State& target);

/// Supplies the operator application for each token. Implementations may be
/// stochastic (measurement-backed); `ok = false` flags a failed
/// post-selection, with the post-failure state returned for diagnostics.
class RotationProvider {
  public:
    virtual ~RotationProvider() = default;

    struct Outcome {
        State state;
        bool ok = true;
    };
    virtual Outcome apply_token(RotationToken token, const State& psi,
                                RandomStream& rng) = 0;
};

/// Exact dense rotations about fixed source/target axes.
class ExactRotationProvider final : public RotationProvider {
  public:
    ExactRotationProvider(State source_axis, State target_axis,
                          double angle = kFixedPointAngle);
    Outcome apply_token(RotationToken token, const State& psi, RandomStream& rng) override;

  private:
    State source_;
    State target_;
    double angle_;
};

struct SequenceResult {
    State state;
    std::int64_t queries_used = 0;  ///< tokens attempted, including a failed one
    bool ok = true;
};

/// Applies the sequence tokens in order through `provider`. A provider
/// failure stops the walk and is reported in the result.
SequenceResult apply_sequence(const QuerySequence& seq, const State& source,
                              RotationProvider& provider, RandomStream& rng);

/// Convenience: exact rotations about (source, target) at pi/3.
State apply_sequence_exact(const QuerySequence& seq, const State& source,
                           const State& target);

struct FixedPointReport {
    double epsilon;            ///< initial failure probability
    int level;
    double predicted_failure;  ///< epsilon^(3^level)
    double observed_failure;
};

/// Stratified sweep: `n_trials` random state pairs with initial failure
/// probabilities spread evenly over [0, 1], driven through the level-n
/// sequence with exact rotations.
std::vector<FixedPointReport> verify_fixed_point(Eigen::Index dim, int level,
                                                 int n_trials, RandomStream& rng);

/// Builds a random pair (source, target) with exactly the requested initial
/// failure probability 1 - |<target|source>|^2 = epsilon.
std::pair<State, State> random_pair_with_failure(Eigen::Index dim, double epsilon,
                                                 RandomStream& rng);

}  // namespace fpqsim
