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

#include <vector>

#include "fpqsim/operators.hpp"

namespace fpqsim {

struct MeasurementOutcome {
    Eigen::Index outcome;
    State state;         ///< post-measurement (collapsed, renormalized) state
    double probability;  ///< Born probability of the drawn outcome
};

/**
 * Ideal projective measurement.
 *
 * `projectors` must be Hermitian idempotents summing to the identity
 * (tolerance 1e-9); mutual orthogonality follows from those two properties
 * and is not checked separately. Outcome k is drawn with probability
 * ||P_k s||^2 from the given stream, deterministically per seed.
 */
MeasurementOutcome measure_projective(const State& s,
                                      const std::vector<Matrix>& projectors,
                                      RandomStream& rng);

/// Measurement in an orthonormal basis: the special case of
/// measure_projective with rank-1 projectors |v_j><v_j|, computed from
/// overlaps directly. Outcome j collapses to basis[j].
MeasurementOutcome measure_in_basis(const State& s,
                                    const std::vector<State>& basis,
                                    RandomStream& rng);

}  // namespace fpqsim
