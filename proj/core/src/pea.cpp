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

#include "fpqsim/pea.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpqsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_l(int l, int max_l) {
    if (l < 1 || l > max_l) {
        throw std::invalid_argument("ancilla register size l out of range");
    }
}

}  // namespace

AncillaConfig AncillaConfig::for_problem(const InterpolationProblem& p, int l) {
    require_l(l, 20);
    return AncillaConfig{l, 1.0 / (kTwoPi * p.gamma())};
}

AncillaConfig AncillaConfig::with_time(int l, double t) {
    require_l(l, 20);
    if (!(t > 0.0)) {
        throw std::invalid_argument("AncillaConfig: t must be positive");
    }
    return AncillaConfig{l, t};
}

void AncillaConfig::validate_for_norm(double h_norm) const {
    if (h_norm > 0.0 && t > (1.0 + 1e-9) / (kTwoPi * h_norm)) {
        throw std::invalid_argument(
            "AncillaConfig: t exceeds 1/(2 pi ||H||); eigenphases would alias");
    }
}

double AncillaConfig::separation(double gap) const {
    return static_cast<double>(dim()) * gap * t;
}

void AncillaConfig::require_separation(double gap, double minimum) const {
    if (separation(gap) < minimum) {
        throw std::invalid_argument(
            "AncillaConfig: 2^l * gap * t below the separation requirement; "
            "increase l");
    }
}

int AncillaConfig::marked_width(double gap) const {
    return static_cast<int>(std::floor(0.5 * separation(gap)));
}

MarkedSet::MarkedSet(std::int64_t bottom, int width, int l)
    : bottom_(bottom), width_(width), l_(l) {
    require_l(l, 20);
    const std::int64_t n = std::int64_t{1} << l;
    if (width < 0 || width >= n) {
        throw std::invalid_argument("MarkedSet: width out of range");
    }
    bottom_ = ((bottom % n) + n) % n;
}

MarkedSet MarkedSet::from_bottom(std::int64_t bottom, int width, int l) {
    return MarkedSet(bottom, width, l);
}

MarkedSet MarkedSet::centered(std::int64_t anchor, int width, int l) {
    return MarkedSet(anchor - width / 2, width, l);
}

bool MarkedSet::contains(std::int64_t k) const {
    const std::int64_t n = ancilla_dim();
    const std::int64_t offset = (((k - bottom_) % n) + n) % n;
    return offset <= width_;
}

std::vector<std::int64_t> MarkedSet::members() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(width_) + 1);
    const std::int64_t n = ancilla_dim();
    for (int i = 0; i <= width_; ++i) {
        out.push_back((bottom_ + i) % n);
    }
    return out;
}

std::int64_t MarkedSet::distance_to(std::int64_t k) const {
    if (contains(k)) {
        return 0;
    }
    const std::int64_t n = ancilla_dim();
    const std::int64_t top = (bottom_ + width_) % n;
    return std::min(mod_distance(k, bottom_, l_), mod_distance(k, top, l_));
}

std::int64_t mod_distance(std::int64_t a, std::int64_t b, int l) {
    const std::int64_t n = std::int64_t{1} << l;
    std::int64_t d = ((a - b) % n + n) % n;
    return std::min(d, n - d);
}

UnitaryOp qft(int l) {
    require_l(l, 12);
    const Eigen::Index n = Eigen::Index{1} << l;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Matrix f(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index z = 0; z < n; ++z) {
            const double ang =
                kTwoPi * static_cast<double>((k * z) % n) / static_cast<double>(n);
            f(k, z) = scale * std::polar(1.0, ang);
        }
    }
    return UnitaryOp(std::move(f));
}

UnitaryOp controlled_power(const UnitaryOp& u, int l) {
    require_l(l, 12);
    const Eigen::Index d = u.dim();
    const Eigen::Index n = Eigen::Index{1} << l;
    Matrix out = Matrix::Zero(d * n, d * n);
    Matrix power = Matrix::Identity(d, d);
    for (Eigen::Index z = 0; z < n; ++z) {
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index ip = 0; ip < d; ++ip) {
                out(i * n + z, ip * n + z) = power(i, ip);
            }
        }
        power = power * u.entries();
    }
    return UnitaryOp(std::move(out));
}

PhaseEstimationOp::PhaseEstimationOp(const HermitianOp& h, AncillaConfig cfg,
                                     double shift)
    : cfg_(cfg), shift_(shift), system_dim_(h.dim()), spec_(eig_hermitian(h)) {
    const double norm = std::max(std::abs(spec_.eigenvalues(0)),
                                 std::abs(spec_.eigenvalues(system_dim_ - 1)));
    cfg_.validate_for_norm(norm);
    if (shift_ < norm - 1e-12) {
        throw std::invalid_argument(
            "PhaseEstimationOp: shift must dominate ||H|| so phases are nonnegative");
    }
    const double top_phase = (spec_.eigenvalues(system_dim_ - 1) + shift_) * cfg_.t;
    if (top_phase >= 1.0 - 1e-12) {
        throw std::invalid_argument(
            "PhaseEstimationOp: shifted top phase reaches a full turn; reduce t");
    }

    const Eigen::Index n = cfg_.dim();
    basis_.resize(system_dim_, system_dim_);
    for (Eigen::Index j = 0; j < system_dim_; ++j) {
        basis_.col(j) = spec_.eigenvectors[static_cast<std::size_t>(j)].amplitudes();
    }
    phases_.resize(system_dim_);
    phase_table_.resize(system_dim_, n);
    for (Eigen::Index j = 0; j < system_dim_; ++j) {
        phases_(j) = static_cast<double>(n) * (spec_.eigenvalues(j) + shift_) * cfg_.t;
        const double step = -kTwoPi * phases_(j) / static_cast<double>(n);
        for (Eigen::Index z = 0; z < n; ++z) {
            phase_table_(j, z) = std::polar(1.0, step * static_cast<double>(z));
        }
    }
}

PhaseEstimationOp::PhaseEstimationOp(const HermitianOp& h, AncillaConfig cfg)
    : PhaseEstimationOp(h, cfg, spectral_norm(h)) {}

std::int64_t PhaseEstimationOp::anchor_of(Eigen::Index j) const {
    // The tiny offset keeps phases that are integers up to roundoff from
    // flooring one bin low.
    return static_cast<std::int64_t>(std::floor(phases_(j) + 1e-9));
}

void PhaseEstimationOp::apply_inplace(Vector& psi, bool adjoint) const {
    if (psi.size() != dim()) {
        throw std::invalid_argument("PhaseEstimationOp: dimension mismatch");
    }
    const Eigen::Index n = cfg_.dim();
    using RowMajorMap =
        Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    RowMajorMap m(psi.data(), system_dim_, n);

    if (adjoint) {
        fourier_ancilla_inplace(psi, system_dim_, cfg_.l, true);
        m = (basis_.adjoint() * m).eval();
        m.array() *= phase_table_.array().conjugate();
        m = (basis_ * m).eval();
    } else {
        m = (basis_.adjoint() * m).eval();
        m.array() *= phase_table_.array();
        m = (basis_ * m).eval();
        fourier_ancilla_inplace(psi, system_dim_, cfg_.l, false);
    }
}

UnitaryOp pea_operator(const HermitianOp& h, const AncillaConfig& cfg, double shift) {
    return materialize(PhaseEstimationOp(h, cfg, shift));
}

UnitaryOp pea_operator(const HermitianOp& h, const AncillaConfig& cfg) {
    return materialize(PhaseEstimationOp(h, cfg));
}

Vector ancilla_response(double theta, int l) {
    require_l(l, 20);
    const Eigen::Index n = Eigen::Index{1} << l;
    Vector phi(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double delta = static_cast<double>(k) - theta;
        const double frac = delta / static_cast<double>(n);
        const Complex denom = Complex{1.0, 0.0} - std::polar(1.0, kTwoPi * frac);
        if (std::abs(denom) < 1e-13) {
            // Integer phase: the response is exactly the matching basis state.
            phi(k) = Complex{1.0, 0.0};
        } else {
            const Complex numer = Complex{1.0, 0.0} - std::polar(1.0, kTwoPi * delta);
            phi(k) = numer / denom / static_cast<double>(n);
        }
    }
    return phi;
}

double response_window_probability(double theta, int l, int c) {
    const Vector phi = ancilla_response(theta, l);
    const std::int64_t anchor = static_cast<std::int64_t>(std::floor(theta));
    double p = 0.0;
    for (Eigen::Index k = 0; k < phi.size(); ++k) {
        if (mod_distance(k, anchor, l) <= c) {
            p += std::norm(phi(k));
        }
    }
    return p;
}

EtaBounds eta_bounds(const AncillaConfig& cfg, double gap) {
    const double sep = cfg.separation(gap);
    if (!(sep > 1.0)) {
        throw std::invalid_argument("eta_bounds: separation condition violated");
    }
    EtaBounds out;
    out.eta0 = 0.5 / sep;
    out.eta_excited = 1.0 / std::sqrt(sep);
    out.eta = out.eta_excited;
    return out;
}

ApproxQuality measure_quality(const PhaseEstimationOp& pea, const MarkedSet& marked,
                              double omega) {
    const Eigen::Index d = pea.system_dim();
    ApproxQuality q;
    q.omega = omega;
    q.gamma.resize(d);
    q.mu.resize(d);
    const Complex kick = std::polar(1.0, omega) - 1.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        const Vector phi = ancilla_response(pea.phase_of(j), marked.l());
        double mass = 0.0;
        for (std::int64_t k : marked.members()) {
            mass += std::norm(phi(static_cast<Eigen::Index>(k)));
        }
        q.gamma(j) = std::sqrt(mass);
        q.mu(j) = Complex{1.0, 0.0} + q.gamma(j) * q.gamma(j) * kick;
    }
    q.eta0 = 1.0 - q.gamma(0);
    q.eta_excited_max = d > 1 ? q.gamma.tail(d - 1).maxCoeff() : 0.0;
    q.eta = std::max(q.eta0, q.eta_excited_max);
    return q;
}

}  // namespace fpqsim
