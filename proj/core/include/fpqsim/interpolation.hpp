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
#include <string>
#include <vector>

#include "fpqsim/operators.hpp"

namespace fpqsim {

struct GapPoint {
    double s;
    double gap;
};

/**
 * A linear operator family H(s) = (1-s) h0 + s h1 together with its derived
 * scale data: gamma = ||h0|| + ||h1|| (spectral norms), the gap profile
 * g(s) = E_1(s) - E_0(s) sampled on a uniform grid including both endpoints,
 * and the grid minimum of that profile.
 *
 * The reported minimum gap is a grid minimum and therefore an upper bound on
 * the true minimum; the default 257-point grid resolves the smooth profiles
 * of the shipped instance families.
 */
class InterpolationProblem {
  public:
    static constexpr int kDefaultGridResolution = 257;

    /// Builds the problem, computing gamma and scanning the gap profile.
    /// Throws if dimensions mismatch or any grid sample has a degenerate
    /// ground level.
    static InterpolationProblem create(HermitianOp h0, HermitianOp h1,
                                       int grid_resolution = kDefaultGridResolution,
                                       std::string family = "custom",
                                       std::uint64_t seed = 0);

    const HermitianOp& h0() const { return h0_; }
    const HermitianOp& h1() const { return h1_; }
    Eigen::Index dim() const { return h0_.dim(); }
    double gamma() const { return gamma_; }
    double min_gap() const { return min_gap_; }
    const std::vector<GapPoint>& gap_profile() const { return gap_profile_; }
    int grid_resolution() const { return grid_resolution_; }
    const std::string& family() const { return family_; }
    std::uint64_t seed() const { return seed_; }

    /// gamma / min_gap, the hardness parameter of the family.
    double hardness() const { return gamma_ / min_gap_; }

  private:
    InterpolationProblem() = default;

    HermitianOp h0_ = HermitianOp::identity(1);
    HermitianOp h1_ = HermitianOp::identity(1);
    double gamma_ = 0.0;
    double min_gap_ = 0.0;
    std::vector<GapPoint> gap_profile_;
    int grid_resolution_ = kDefaultGridResolution;
    std::string family_ = "custom";
    std::uint64_t seed_ = 0;

    friend InterpolationProblem problem_from_json(const std::string&);
};

/// (1-s) h0 + s h1. Requires 0 <= s <= 1.
HermitianOp interpolate(const HermitianOp& h0, const HermitianOp& h1, double s);
HermitianOp interpolate(const InterpolationProblem& p, double s);

struct GapScanResult {
    double min_gap;
    std::vector<GapPoint> profile;
};

/// Scans g(s) on `resolution` uniform samples including both endpoints.
/// Throws on a degenerate ground level at any sample.
GapScanResult gap_scan(const HermitianOp& h0, const HermitianOp& h1, int resolution);
GapScanResult gap_scan(const InterpolationProblem& p);

struct OverlapBoundCheck {
    double overlap_sq;  ///< exact |<ground(s+delta)|ground(s)>|^2
    double bound;       ///< 1 - (delta * gamma / min_gap)^2
    bool holds;         ///< overlap_sq >= bound - 1e-9
};

/// Evaluates both sides of the ground-overlap bound by exact diagonalization.
OverlapBoundCheck overlap_bound_check(const InterpolationProblem& p, double s,
                                      double delta);

/// Second-order perturbative estimate of |<ground(s+delta)|ground(s)>|^2:
/// 1 - delta^2 sum_{j != 0} |<v_0|(h0-h1)|v_j>|^2 / (E_0 - E_j)^2.
double perturbation_overlap(const InterpolationProblem& p, double s, double delta);

/// Projector-pair family on n qubits: h0 = I - |u><u| (u uniform),
/// h1 = I - |w><w| (w a seeded random basis state). gamma = 2 and the
/// minimum gap is 1/sqrt(2^n) at s = 1/2.
InterpolationProblem make_grover_instance(int n_qubits, std::uint64_t seed);

/// Seeded dense random pair, rejection-sampled until the scanned gap reaches
/// `min_gap_floor`; both operators are scaled so gamma = 4. Throws after
/// 1000 rejected draws.
InterpolationProblem make_random_instance(Eigen::Index dim, double min_gap_floor,
                                          std::uint64_t seed);

/// 2x2 avoided-crossing family with minimum gap exactly `gap` at s = 1/2
/// and gamma = sqrt(1 + gap^2); gives a directly dialable hardness axis.
InterpolationProblem make_two_level_instance(double gap);

/// JSON document {dim, family, seed, gamma, min_gap, h0, h1} with matrices
/// as row-major [re, im] pairs at full precision; parsing it back yields a
/// byte-identical re-serialization.
std::string problem_to_json(const InterpolationProblem& p);
InterpolationProblem problem_from_json(const std::string& doc);

}  // namespace fpqsim
