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
#include <vector>

#include "fpqsim/interpolation.hpp"
#include "fpqsim/linear_op.hpp"

namespace fpqsim {

/**
 * Ancilla register parameters for phase estimation: l qubits and the
 * evolution time t entering U = exp(-i 2 pi H t). Valid configurations
 * satisfy t <= 1/(2 pi ||H||) for every operator they are used with (so
 * eigenphases map one-to-one) and a separation condition 2^l g t >= 8 for
 * the gap g in play (so ground and excited phase peaks stay apart).
 */
struct AncillaConfig {
    int l = 8;
    double t = 0.0;

    Eigen::Index dim() const { return Eigen::Index{1} << l; }

    /// Largest admissible time for the family: t = 1/(2 pi gamma).
    static AncillaConfig for_problem(const InterpolationProblem& p, int l);
    static AncillaConfig with_time(int l, double t);

    /// Throws unless t <= 1/(2 pi h_norm) (small slack for roundoff).
    void validate_for_norm(double h_norm) const;

    /// 2^l * gap * t.
    double separation(double gap) const;
    void require_separation(double gap, double minimum = kDefaultMinSeparation) const;

    /// Widest admissible marked window: floor(2^(l-1) gap t).
    int marked_width(double gap) const;

    static constexpr double kDefaultMinSeparation = 8.0;
};

/**
 * A contiguous (mod 2^l) window of ancilla basis indices. Membership wraps
 * around the register boundary, so windows near 0 or 2^l - 1 behave like any
 * other. `bottom` is the lowest index of the window; the window holds
 * width + 1 indices.
 */
class MarkedSet {
  public:
    /// Window [bottom, bottom + width] (mod 2^l).
    static MarkedSet from_bottom(std::int64_t bottom, int width, int l);

    /// Window of the same size centered on an anchor estimate:
    /// [anchor - floor(width/2), anchor + ceil(width/2)] (mod 2^l). Centering
    /// keeps both spectral tails of the anchored peak inside the window,
    /// which a bottom-anchored window cannot do for large separations.
    static MarkedSet centered(std::int64_t anchor, int width, int l);

    std::int64_t bottom() const { return bottom_; }
    int width() const { return width_; }
    int l() const { return l_; }
    Eigen::Index ancilla_dim() const { return Eigen::Index{1} << l_; }

    bool contains(std::int64_t k) const;
    std::vector<std::int64_t> members() const;

    /// Minimum wrap-around distance from k to the window.
    std::int64_t distance_to(std::int64_t k) const;

  private:
    MarkedSet(std::int64_t bottom, int width, int l);
    std::int64_t bottom_ = 0;
    int width_ = 0;
    int l_ = 0;
};

/// Circular distance |a - b| computed mod 2^l.
std::int64_t mod_distance(std::int64_t a, std::int64_t b, int l);

/// Dense Fourier matrix F[k][z] = 2^{-l/2} exp(+2 pi i k z / 2^l), l <= 12.
UnitaryOp qft(int l);

/// Dense controlled power: |E>|z> -> (U^z |E>)|z>, system slow factor.
UnitaryOp controlled_power(const UnitaryOp& u, int l);

/**
 * Phase-estimation transform for a Hermitian operator: the product
 * (I (x) F) C_U with U = exp(-i 2 pi (H + shift) t). The spectrum is shifted
 * by `shift` >= ||H|| so all eigenphases are nonnegative and their ancilla
 * peak order matches the eigenvalue order; the shift is a multiple of the
 * identity and cancels from every probability. Applications run through the
 * eigenbasis and a radix-2 transform rather than a dense matrix.
 */
class PhaseEstimationOp final : public LinearUnitary {
  public:
    PhaseEstimationOp(const HermitianOp& h, AncillaConfig cfg, double shift);
    /// Shift defaulting to ||H||.
    PhaseEstimationOp(const HermitianOp& h, AncillaConfig cfg);

    Eigen::Index dim() const override { return system_dim_ * cfg_.dim(); }
    void apply_inplace(Vector& psi, bool adjoint) const override;

    Eigen::Index system_dim() const { return system_dim_; }
    const AncillaConfig& config() const { return cfg_; }
    double shift() const { return shift_; }
    const SpectralData& spectrum() const { return spec_; }

    /// Shifted eigenphase in ancilla bins: 2^l (E_j + shift) t.
    double phase_of(Eigen::Index j) const { return phases_(j); }
    /// Integer anchor floor(phase_of(j)).
    std::int64_t anchor_of(Eigen::Index j) const;

  private:
    AncillaConfig cfg_;
    double shift_ = 0.0;
    Eigen::Index system_dim_ = 0;
    SpectralData spec_;
    Matrix basis_;                 // eigenvector columns
    Eigen::VectorXd phases_;       // 2^l (E_j + shift) t
    Matrix phase_table_;           // [j, z] = exp(-2 pi i z phases_j / 2^l)
};

/// Dense matrix of the transform above (test-scale registers).
UnitaryOp pea_operator(const HermitianOp& h, const AncillaConfig& cfg, double shift);
UnitaryOp pea_operator(const HermitianOp& h, const AncillaConfig& cfg);

/**
 * Normalized ancilla state produced by phase estimation on an eigenvector
 * with phase `theta` (in bins): amplitudes
 * <k|phi> = 2^{-l} sum_z exp(2 pi i z (k - theta) / 2^l),
 * evaluated in closed form.
 */
Vector ancilla_response(double theta, int l);

/// Probability that a measurement of ancilla_response(theta, l) lands within
/// circular distance c of floor(theta).
double response_window_probability(double theta, int l, int c);

/// Analytic accuracy bounds of the marked-window discriminator at gap `gap`:
/// ground leakage eta0 <= 1/(2^(l+1) g t), excited capture
/// eta_excited <= 1/sqrt(2^l g t), and eta = the larger of the two.
struct EtaBounds {
    double eta0;
    double eta_excited;
    double eta;
};
EtaBounds eta_bounds(const AncillaConfig& cfg, double gap);

/**
 * Measured discriminator quality for one operator and marked window.
 * gamma[j] is the marked-window amplitude of eigenstate j's ancilla
 * response; eta0 = 1 - gamma[0]; eta_excited_max = max_{j>0} gamma[j];
 * mu[j] = 1 + gamma[j]^2 (e^{i omega} - 1) is the post-selected amplitude
 * factor the selective-rotation pipeline imprints on eigenstate j.
 */
struct ApproxQuality {
    double eta0 = 0.0;
    double eta_excited_max = 0.0;
    double eta = 0.0;
    double omega = 0.0;
    Eigen::VectorXd gamma;
    Vector mu;
};
ApproxQuality measure_quality(const PhaseEstimationOp& pea, const MarkedSet& marked,
                              double omega);

}  // namespace fpqsim
