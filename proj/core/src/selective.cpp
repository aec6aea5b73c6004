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

#include "fpqsim/selective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpqsim {

namespace {

Eigen::Index ancilla_dim_of(const LinearUnitary& b, Eigen::Index system_dim) {
    if (system_dim < 1 || b.dim() % system_dim != 0) {
        throw std::invalid_argument("composite operator does not factor over the system");
    }
    return b.dim() / system_dim;
}

}  // namespace

AncillaMarkedPhase::AncillaMarkedPhase(Eigen::Index system_dim, MarkedSet marked,
                                       double omega, bool complement)
    : system_dim_(system_dim), marked_(std::move(marked)), omega_(omega),
      complement_(complement) {
    if (system_dim_ < 1) {
        throw std::invalid_argument("AncillaMarkedPhase: bad system dimension");
    }
}

void AncillaMarkedPhase::apply_inplace(Vector& psi, bool adjoint) const {
    if (psi.size() != dim()) {
        throw std::invalid_argument("AncillaMarkedPhase: dimension mismatch");
    }
    const Eigen::Index n = marked_.ancilla_dim();
    const Complex phase = std::polar(1.0, adjoint ? -omega_ : omega_);
    for (Eigen::Index z = 0; z < n; ++z) {
        if (marked_.contains(z) != complement_) {
            for (Eigen::Index i = 0; i < system_dim_; ++i) {
                psi(i * n + z) *= phase;
            }
        }
    }
}

AncillaUniformRotation::AncillaUniformRotation(Eigen::Index system_dim, int l,
                                               double omega)
    : system_dim_(system_dim), l_(l), omega_(omega) {
    if (system_dim_ < 1 || l_ < 1 || l_ > 20) {
        throw std::invalid_argument("AncillaUniformRotation: bad dimensions");
    }
}

void AncillaUniformRotation::apply_inplace(Vector& psi, bool adjoint) const {
    if (psi.size() != dim()) {
        throw std::invalid_argument("AncillaUniformRotation: dimension mismatch");
    }
    const Eigen::Index n = Eigen::Index{1} << l_;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const Complex kick = std::polar(1.0, adjoint ? -omega_ : omega_) - 1.0;
    for (Eigen::Index i = 0; i < system_dim_; ++i) {
        Complex overlap{0.0, 0.0};
        for (Eigen::Index z = 0; z < n; ++z) {
            overlap += psi(i * n + z);
        }
        overlap *= inv_sqrt_n;
        const Complex add = kick * overlap * inv_sqrt_n;
        for (Eigen::Index z = 0; z < n; ++z) {
            psi(i * n + z) += add;
        }
    }
}

SelectiveOutcome approx_selective(const State& system, const LinearUnitary& b,
                                  const MarkedSet& marked, double omega,
                                  RandomStream& rng) {
    const Eigen::Index d = system.dim();
    const Eigen::Index n = ancilla_dim_of(b, d);
    if (n != marked.ancilla_dim()) {
        throw std::invalid_argument("approx_selective: marked set / ancilla mismatch");
    }

    Vector psi = tensor(system, State::uniform(n)).amplitudes();
    b.apply_inplace(psi, false);
    AncillaMarkedPhase(d, marked, omega).apply_inplace(psi, false);
    b.apply_inplace(psi, true);

    // Post-select the ancilla on the uniform state.
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    Vector projected(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index z = 0; z < n; ++z) {
            acc += psi(i * n + z);
        }
        projected(i) = acc * inv_sqrt_n;
    }
    const double p = std::min(1.0, projected.squaredNorm());

    SelectiveOutcome out;
    out.success_probability = p;
    // An exact discriminator leaves no failure branch; don't let roundoff
    // draw a zero-norm state.
    if (p >= 1.0 - 1e-15 || rng.uniform() < p) {
        out.success = true;
        out.state = State::normalized(std::move(projected));
    } else {
        out.success = false;
        for (Eigen::Index i = 0; i < d; ++i) {
            const Complex sub = projected(i) * inv_sqrt_n;
            for (Eigen::Index z = 0; z < n; ++z) {
                psi(i * n + z) -= sub;
            }
        }
        out.state = State::normalized(std::move(psi));
    }
    return out;
}

SelectiveOutcome approx_selective(const State& system, const UnitaryOp& b,
                                  const MarkedSet& marked, double omega,
                                  RandomStream& rng) {
    return approx_selective(system, DenseUnitary(b), marked, omega, rng);
}

bool admissible_boost(int q) { return q == 2 || q == 8 || q == 26; }

namespace {

int boost_level(int q) {
    switch (q) {
        case 2: return 1;
        case 8: return 2;
        case 26: return 3;
        default:
            throw std::invalid_argument("boost strength must be one of {2, 8, 26}");
    }
}

void require_boost_regime(int q, double eta) {
    if (!(eta >= 0.0)) {
        throw std::invalid_argument("boost: eta must be nonnegative");
    }
    if ((q + 1) * eta * eta > 0.2) {
        throw std::invalid_argument(
            "boost: (q + 1) eta^2 exceeds 0.2; the layered expansion breaks down");
    }
}

/// One fixed-point layer over a discriminator: composed product
/// b, then per token either the supplied target rotation or b R_e b^dag.
std::shared_ptr<const LinearUnitary> boost_layer(
    std::shared_ptr<const LinearUnitary> b,
    std::shared_ptr<const LinearUnitary> target_rotation, Eigen::Index system_dim,
    int l, int level) {
    auto e_rot = std::make_shared<const AncillaUniformRotation>(system_dim, l,
                                                                kFixedPointAngle);
    std::vector<ComposedUnitary::Step> steps;
    const QuerySequence seq = QuerySequence::build(level);
    steps.reserve(1 + 3 * seq.steps().size());
    steps.push_back({b, false});
    for (RotationToken token : seq.steps()) {
        switch (token) {
            case RotationToken::kTarget:
                steps.push_back({target_rotation, false});
                break;
            case RotationToken::kTargetAdj:
                steps.push_back({target_rotation, true});
                break;
            case RotationToken::kSource:
                steps.push_back({b, true});
                steps.push_back({e_rot, false});
                steps.push_back({b, false});
                break;
            case RotationToken::kSourceAdj:
                steps.push_back({b, true});
                steps.push_back({e_rot, true});
                steps.push_back({b, false});
                break;
        }
    }
    return std::make_shared<const ComposedUnitary>(std::move(steps));
}

}  // namespace

std::shared_ptr<const LinearUnitary> boosted_discriminator(
    std::shared_ptr<const LinearUnitary> b, const MarkedSet& marked, int q, double eta) {
    const int level = boost_level(q);
    require_boost_regime(q, eta);
    if (b->dim() % marked.ancilla_dim() != 0) {
        throw std::invalid_argument("boosted_discriminator: register does not factor");
    }
    const Eigen::Index system_dim = b->dim() / marked.ancilla_dim();
    auto marked_rot = std::make_shared<const AncillaMarkedPhase>(
        system_dim, marked, kFixedPointAngle, false);
    return boost_layer(std::move(b), std::move(marked_rot), system_dim, marked.l(),
                       level);
}

std::shared_ptr<const LinearUnitary> boosted_discriminator2(
    std::shared_ptr<const LinearUnitary> b_q, const MarkedSet& marked, int q_prime,
    double eta) {
    const int level = boost_level(q_prime);
    require_boost_regime(q_prime, eta);
    const Eigen::Index system_dim = b_q->dim() / marked.ancilla_dim();
    auto unmarked_rot = std::make_shared<const AncillaMarkedPhase>(
        system_dim, marked, kFixedPointAngle, true);
    return boost_layer(std::move(b_q), std::move(unmarked_rot), system_dim, marked.l(),
                       level);
}

UnitaryOp boosted_b(const UnitaryOp& b, const MarkedSet& marked, int q, double eta) {
    auto dense = std::make_shared<const DenseUnitary>(b);
    return materialize(*boosted_discriminator(dense, marked, q, eta));
}

UnitaryOp boosted_b2(const UnitaryOp& b_q, const MarkedSet& marked, int q_prime,
                     double eta) {
    auto dense = std::make_shared<const DenseUnitary>(b_q);
    return materialize(*boosted_discriminator2(dense, marked, q_prime, eta));
}

UnitaryOp make_synthetic_discriminator(const Eigen::VectorXd& gamma,
                                       const MarkedSet& marked) {
    const Eigen::Index d = gamma.size();
    const Eigen::Index n = marked.ancilla_dim();
    if (d < 1) {
        throw std::invalid_argument("make_synthetic_discriminator: empty gamma");
    }
    if (marked.width() + 1 >= n) {
        throw std::invalid_argument("make_synthetic_discriminator: window covers register");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        if (!(gamma(j) >= -1.0 && gamma(j) <= 1.0)) {
            throw std::invalid_argument("make_synthetic_discriminator: gamma out of [-1, 1]");
        }
    }

    // Deterministic in-window / out-of-window directions: the lowest marked
    // and unmarked basis states.
    const std::int64_t in_index = marked.bottom();
    std::int64_t out_index = -1;
    for (Eigen::Index z = 0; z < n; ++z) {
        if (!marked.contains(z)) {
            out_index = z;
            break;
        }
    }

    Matrix full = Matrix::Zero(d * n, d * n);
    const Vector e = State::uniform(n).amplitudes();
    for (Eigen::Index j = 0; j < d; ++j) {
        Vector v = Vector::Zero(n);
        v(static_cast<Eigen::Index>(in_index)) = Complex{gamma(j), 0.0};
        v(static_cast<Eigen::Index>(out_index)) =
            Complex{std::sqrt(std::max(0.0, 1.0 - gamma(j) * gamma(j))), 0.0};

        // Unitary on the ancilla mapping |e> to v: rotate within span{e, v},
        // identity on the orthogonal complement.
        const Complex c = e.dot(v);
        Matrix block = Matrix::Identity(n, n);
        const Vector w = v - c * e;
        const double wn = w.norm();
        if (wn > 1e-14) {
            const Vector u2 = w / wn;
            // 2x2 rotation [e, u2] -> [v, ...] completed unitarily.
            block += (c - 1.0) * (e * e.adjoint());
            block += wn * (u2 * e.adjoint());
            block += -std::conj(wn) * (e * u2.adjoint());
            block += (std::conj(c) - 1.0) * (u2 * u2.adjoint());
        } else if (std::abs(c - 1.0) > 1e-14) {
            block += (c - 1.0) * (e * e.adjoint());
        }
        full.block(j * n, j * n, n, n) = block;
    }
    return UnitaryOp::checked(std::move(full), 1e-9);
}

double marked_amplitude(const LinearUnitary& b, const MarkedSet& marked,
                        Eigen::Index system_dim, Eigen::Index j) {
    const Eigen::Index n = ancilla_dim_of(b, system_dim);
    Vector psi =
        tensor(State::basis(system_dim, j), State::uniform(n)).amplitudes();
    b.apply_inplace(psi, false);
    double mass = 0.0;
    for (Eigen::Index z = 0; z < n; ++z) {
        if (marked.contains(z)) {
            for (Eigen::Index i = 0; i < system_dim; ++i) {
                mass += std::norm(psi(i * n + z));
            }
        }
    }
    return std::sqrt(mass);
}

AncillaReadout read_out_ancilla(const Vector& composite, Eigen::Index system_dim,
                                RandomStream& rng) {
    if (system_dim < 1 || composite.size() % system_dim != 0) {
        throw std::invalid_argument("read_out_ancilla: register does not factor");
    }
    const Eigen::Index n = composite.size() / system_dim;

    Eigen::VectorXd marginal = Eigen::VectorXd::Zero(n);
    for (Eigen::Index z = 0; z < n; ++z) {
        for (Eigen::Index i = 0; i < system_dim; ++i) {
            marginal(z) += std::norm(composite(i * n + z));
        }
    }
    const double u = rng.uniform();
    Eigen::Index pick = n - 1;
    double acc = 0.0;
    for (Eigen::Index z = 0; z < n; ++z) {
        acc += marginal(z);
        if (u < acc) {
            pick = z;
            break;
        }
    }
    if (marginal(pick) <= 1e-300) {
        Eigen::Index best = 0;
        marginal.maxCoeff(&best);
        pick = best;
    }

    Vector collapsed(system_dim);
    for (Eigen::Index i = 0; i < system_dim; ++i) {
        collapsed(i) = composite(i * n + pick);
    }
    return AncillaReadout{pick, State::normalized(std::move(collapsed))};
}

std::int64_t estimate_anchor(State& system, const PhaseEstimationOp& pea, int repeats,
                             RandomStream& rng, CostLedger* ledger) {
    if (repeats < 3) {
        throw std::invalid_argument("estimate_anchor: need at least 3 repeats");
    }
    const Eigen::Index d = pea.system_dim();
    if (system.dim() != d) {
        throw std::invalid_argument("estimate_anchor: system dimension mismatch");
    }
    const Eigen::Index n = pea.config().dim();

    std::vector<std::int64_t> outcomes;
    outcomes.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
        Vector psi = tensor(system, State::uniform(n)).amplitudes();
        pea.apply_inplace(psi, false);
        AncillaReadout shot = read_out_ancilla(psi, d, rng);
        outcomes.push_back(shot.outcome);
        system = std::move(shot.system);
        if (ledger != nullptr) {
            ledger->charge_pea_runs(1, pea.config().l);
        }
    }

    // Median on the circle: unwrap against the first outcome.
    const std::int64_t ref = outcomes.front();
    std::vector<std::int64_t> offsets;
    offsets.reserve(outcomes.size());
    const std::int64_t nn = static_cast<std::int64_t>(n);
    for (std::int64_t k : outcomes) {
        std::int64_t off = (((k - ref) % nn) + nn + nn / 2) % nn - nn / 2;
        offsets.push_back(off);
    }
    std::nth_element(offsets.begin(), offsets.begin() + offsets.size() / 2,
                     offsets.end());
    const std::int64_t med = offsets[offsets.size() / 2];
    return (((ref + med) % nn) + nn) % nn;
}

std::int64_t pea_runs_per_selective(OracleMode mode, std::optional<BoostPair> boost) {
    switch (mode) {
        case OracleMode::kExact:
            return 0;
        case OracleMode::kPea:
            return 2;
        case OracleMode::kPeaBoosted: {
            if (!boost.has_value()) {
                throw std::invalid_argument("pea_runs_per_selective: boost missing");
            }
            return std::int64_t{4} * boost->q * boost->q_prime;
        }
    }
    throw std::logic_error("pea_runs_per_selective: bad mode");
}

SelectiveOracle SelectiveOracle::exact(State source_axis, State target_axis,
                                       double angle) {
    SelectiveOracle o;
    o.mode_ = OracleMode::kExact;
    o.angle_ = angle;
    o.source_axis_ = std::move(source_axis);
    o.target_axis_ = std::move(target_axis);
    return o;
}

SelectiveOracle SelectiveOracle::pea(std::shared_ptr<const PhaseEstimationOp> source_op,
                                     std::shared_ptr<const PhaseEstimationOp> target_op,
                                     MarkedSet marked_source, MarkedSet marked_target,
                                     std::optional<BoostPair> boost, double eta,
                                     CostLedger* ledger) {
    SelectiveOracle o;
    o.mode_ = boost.has_value() ? OracleMode::kPeaBoosted : OracleMode::kPea;
    o.l_ = source_op->config().l;
    o.boost_ = boost;
    o.ledger_ = ledger;
    if (boost.has_value()) {
        o.source_disc_ = boosted_discriminator2(
            boosted_discriminator(source_op, marked_source, boost->q, eta),
            marked_source, boost->q_prime, eta);
        o.target_disc_ = boosted_discriminator2(
            boosted_discriminator(target_op, marked_target, boost->q, eta),
            marked_target, boost->q_prime, eta);
    } else {
        o.source_disc_ = std::move(source_op);
        o.target_disc_ = std::move(target_op);
    }
    o.marked_source_ = std::move(marked_source);
    o.marked_target_ = std::move(marked_target);
    return o;
}

RotationProvider::Outcome SelectiveOracle::apply_token(RotationToken token,
                                                       const State& psi,
                                                       RandomStream& rng) {
    const bool adj =
        token == RotationToken::kSourceAdj || token == RotationToken::kTargetAdj;
    const bool on_source =
        token == RotationToken::kSource || token == RotationToken::kSourceAdj;

    if (mode_ == OracleMode::kExact) {
        const SelectiveRotation rot{on_source ? *source_axis_ : *target_axis_, angle_,
                                    adj};
        return Outcome{rot.apply(psi), true};
    }

    if (ledger_ != nullptr) {
        ledger_->charge_pea_runs(pea_runs_per_selective(mode_, boost_), l_);
    }
    const LinearUnitary& disc = on_source ? *source_disc_ : *target_disc_;
    const MarkedSet& marked = on_source ? *marked_source_ : *marked_target_;
    SelectiveOutcome out =
        approx_selective(psi, disc, marked, adj ? -angle_ : angle_, rng);
    if (out.success) {
        return Outcome{std::move(out.state), true};
    }
    // Failed post-selection: the leftover ancilla is discarded, which we
    // simulate by reading it out and collapsing the system register.
    AncillaReadout readout = read_out_ancilla(out.state.amplitudes(), psi.dim(), rng);
    return Outcome{std::move(readout.system), false};
}

SelectiveOracle make_oracle(const InterpolationProblem& problem, double s, double delta,
                            const AncillaConfig& cfg, OracleMode mode,
                            std::optional<BoostPair> boost,
                            std::optional<std::int64_t> anchor, CostLedger* ledger) {
    if (mode == OracleMode::kExact) {
        const SpectralData a = eig_hermitian(interpolate(problem, s));
        const SpectralData b = eig_hermitian(interpolate(problem, s + delta));
        a.require_nondegenerate_ground("make_oracle");
        b.require_nondegenerate_ground("make_oracle");
        return SelectiveOracle::exact(a.eigenvectors[0], b.eigenvectors[0]);
    }

    if (!anchor.has_value()) {
        throw std::invalid_argument("make_oracle: pea modes need an anchor estimate");
    }
    if (mode == OracleMode::kPeaBoosted && !boost.has_value()) {
        throw std::invalid_argument("make_oracle: boosted mode needs boost parameters");
    }
    cfg.validate_for_norm(problem.gamma());
    cfg.require_separation(problem.min_gap());

    const double g = problem.min_gap();
    const int width = cfg.marked_width(g);
    // The window must hold the +/-2 anchor slack plus the perturbative drift
    // of the next endpoint's phase, with two bins of tail margin.
    const double drift = static_cast<double>(cfg.dim()) * cfg.t * delta * problem.gamma();
    if (width / 2 < 2 + static_cast<int>(std::ceil(drift)) + 2) {
        throw std::invalid_argument(
            "make_oracle: marked window cannot cover anchor slack and step drift; "
            "increase l or the step count");
    }

    auto source_op = std::make_shared<const PhaseEstimationOp>(
        interpolate(problem, s), cfg, problem.gamma());
    auto target_op = std::make_shared<const PhaseEstimationOp>(
        interpolate(problem, s + delta), cfg, problem.gamma());
    MarkedSet marked = MarkedSet::centered(*anchor, width, cfg.l);
    const double eta = eta_bounds(cfg, g).eta_excited;
    return SelectiveOracle::pea(std::move(source_op), std::move(target_op), marked,
                                marked, mode == OracleMode::kPeaBoosted ? boost
                                                                        : std::nullopt,
                                eta, ledger);
}

}  // namespace fpqsim
