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

#include "fpqsim/fpqs.hpp"

#include <cmath>
#include <stdexcept>

namespace fpqsim {

UnitaryOp SelectiveRotation::to_unitary() const {
    const double omega = adjoint ? -angle : angle;
    const Vector& a = axis.amplitudes();
    Matrix m = Matrix::Identity(axis.dim(), axis.dim()) -
               (Complex{1.0, 0.0} - std::polar(1.0, omega)) * (a * a.adjoint());
    return UnitaryOp(std::move(m));
}

void SelectiveRotation::apply_inplace(Vector& psi) const {
    if (psi.size() != axis.dim()) {
        throw std::invalid_argument("SelectiveRotation: dimension mismatch");
    }
    const double omega = adjoint ? -angle : angle;
    const Complex overlap = axis.amplitudes().dot(psi);
    psi += (std::polar(1.0, omega) - 1.0) * overlap * axis.amplitudes();
}

State SelectiveRotation::apply(const State& s) const {
    Vector v = s.amplitudes();
    apply_inplace(v);
    return State::normalized(std::move(v));
}

UnitaryOp selective_rotation(const State& axis, double angle, bool adjoint) {
    if (std::abs(axis.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("selective_rotation: axis must be normalized");
    }
    return SelectiveRotation{axis, angle, adjoint}.to_unitary();
}

RotationToken token_adjoint(RotationToken t) {
    switch (t) {
        case RotationToken::kSource: return RotationToken::kSourceAdj;
        case RotationToken::kTarget: return RotationToken::kTargetAdj;
        case RotationToken::kSourceAdj: return RotationToken::kSource;
        case RotationToken::kTargetAdj: return RotationToken::kTarget;
    }
    throw std::logic_error("token_adjoint: bad token");
}

char token_char(RotationToken t) {
    switch (t) {
        case RotationToken::kSource: return 'a';
        case RotationToken::kTarget: return 'b';
        case RotationToken::kSourceAdj: return 'A';
        case RotationToken::kTargetAdj: return 'B';
    }
    throw std::logic_error("token_char: bad token");
}

RotationToken token_from_char(char c) {
    switch (c) {
        case 'a': return RotationToken::kSource;
        case 'b': return RotationToken::kTarget;
        case 'A': return RotationToken::kSourceAdj;
        case 'B': return RotationToken::kTargetAdj;
        default: throw std::invalid_argument("token_from_char: unknown token character");
    }
}

std::int64_t queries_for_level(int level) {
    if (level < 0) {
        throw std::invalid_argument("queries_for_level: level must be nonnegative");
    }
    std::int64_t q = 1;
    for (int i = 0; i < level; ++i) {
        q *= 3;
    }
    return q - 1;
}

QuerySequence QuerySequence::build(int level) {
    if (level < 0 || level > 8) {
        throw std::invalid_argument("QuerySequence::build: level must be in [0, 8]");
    }
    std::vector<RotationToken> steps;
    steps.reserve(static_cast<std::size_t>(queries_for_level(level)));
    for (int n = 0; n < level; ++n) {
        // W(n+1) = W(n) R_source W(n)^dag R_target W(n); in application order
        // that is: W(n), R_target, reversed-and-adjointed W(n), R_source, W(n).
        std::vector<RotationToken> next;
        next.reserve(steps.size() * 3 + 2);
        next.insert(next.end(), steps.begin(), steps.end());
        next.push_back(RotationToken::kTarget);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            next.push_back(token_adjoint(*it));
        }
        next.push_back(RotationToken::kSource);
        next.insert(next.end(), steps.begin(), steps.end());
        steps = std::move(next);
    }
    return QuerySequence(level, std::move(steps));
}

QuerySequence QuerySequence::from_token_string(int level, const std::string& tokens) {
    std::vector<RotationToken> steps;
    steps.reserve(tokens.size());
    for (char c : tokens) {
        steps.push_back(token_from_char(c));
    }
    if (static_cast<std::int64_t>(steps.size()) != queries_for_level(level)) {
        throw std::invalid_argument("QuerySequence: token count does not match level");
    }
    return QuerySequence(level, std::move(steps));
}

std::string QuerySequence::to_token_string() const {
    std::string s;
    s.reserve(steps_.size());
    for (RotationToken t : steps_) {
        s.push_back(token_char(t));
    }
    return s;
}

State fpqs_step(const State& source, const State& target) {
    if (source.dim() != target.dim()) {
        throw std::invalid_argument("fpqs_step: dimension mismatch");
    }
    Vector psi = source.amplitudes();
    SelectiveRotation{target, kFixedPointAngle, false}.apply_inplace(psi);
    SelectiveRotation{source, kFixedPointAngle, false}.apply_inplace(psi);
    return State::normalized(std::move(psi));
}

ExactRotationProvider::ExactRotationProvider(State source_axis, State target_axis,
                                             double angle)
    : source_(std::move(source_axis)), target_(std::move(target_axis)), angle_(angle) {
    if (source_.dim() != target_.dim()) {
        throw std::invalid_argument("ExactRotationProvider: axis dimensions differ");
    }
}

RotationProvider::Outcome ExactRotationProvider::apply_token(RotationToken token,
                                                             const State& psi,
                                                             RandomStream& /*rng*/) {
    const bool adj =
        token == RotationToken::kSourceAdj || token == RotationToken::kTargetAdj;
    const bool on_source =
        token == RotationToken::kSource || token == RotationToken::kSourceAdj;
    const SelectiveRotation rot{on_source ? source_ : target_, angle_, adj};
    return Outcome{rot.apply(psi), true};
}

SequenceResult apply_sequence(const QuerySequence& seq, const State& source,
                              RotationProvider& provider, RandomStream& rng) {
    SequenceResult result{source, 0, true};
    for (RotationToken token : seq.steps()) {
        ++result.queries_used;
        RotationProvider::Outcome out = provider.apply_token(token, result.state, rng);
        result.state = std::move(out.state);
        if (!out.ok) {
            result.ok = false;
            break;
        }
    }
    return result;
}

State apply_sequence_exact(const QuerySequence& seq, const State& source,
                           const State& target) {
    ExactRotationProvider provider(source, target);
    RandomStream unused(0);
    return apply_sequence(seq, source, provider, unused).state;
}

std::pair<State, State> random_pair_with_failure(Eigen::Index dim, double epsilon,
                                                 RandomStream& rng) {
    if (dim < 2) {
        throw std::invalid_argument("random_pair_with_failure: dim must be at least 2");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("random_pair_with_failure: epsilon must be in [0, 1]");
    }
    const State source = State::random(dim, rng);
    // Random direction orthogonal to the source.
    Vector raw = State::random(dim, rng).amplitudes();
    raw -= source.amplitudes().dot(raw) * source.amplitudes();
    if (raw.norm() < 1e-9) {
        // Pathologically aligned draw; any orthogonal completion works.
        raw = Vector::Zero(dim);
        raw(0) = -std::conj(source.amplitude(1));
        raw(1) = std::conj(source.amplitude(0));
    }
    const Vector orth = raw / raw.norm();
    Vector target = std::sqrt(1.0 - epsilon) * source.amplitudes() +
                    std::sqrt(epsilon) * std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)) * orth;
    return {source, State::normalized(std::move(target))};
}

std::vector<FixedPointReport> verify_fixed_point(Eigen::Index dim, int level,
                                                 int n_trials, RandomStream& rng) {
    if (dim < 2) {
        throw std::invalid_argument("verify_fixed_point: dim must be at least 2");
    }
    if (n_trials < 1) {
        throw std::invalid_argument("verify_fixed_point: n_trials must be positive");
    }
    const QuerySequence seq = QuerySequence::build(level);
    std::vector<FixedPointReport> reports;
    reports.reserve(static_cast<std::size_t>(n_trials));
    for (int i = 0; i < n_trials; ++i) {
        const double epsilon =
            n_trials == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n_trials - 1);
        auto [source, target] = random_pair_with_failure(dim, epsilon, rng);
        const State driven = apply_sequence_exact(seq, source, target);
        const double predicted =
            std::pow(epsilon, static_cast<double>(queries_for_level(level) + 1));
        reports.push_back(FixedPointReport{epsilon, level, predicted,
                                           1.0 - fidelity(target, driven)});
    }
    return reports;
}

}  // namespace fpqsim
