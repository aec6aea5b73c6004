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

#include <Eigen/Dense>
#include <complex>

#include "fpqsim/random.hpp"

namespace fpqsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-12;

/**
 * Normalized complex amplitude vector.
 *
 * The dimension may factor as system_dim * ancilla_dim for composite
 * registers; the composite index convention is index = sys * ancilla_dim + anc
 * (system is the slow, left tensor factor). The 2-norm is kept at 1 within
 * 1e-12 across all public operations; in-place unitary application
 * renormalizes accumulated floating-point drift.
 */
class State {
  public:
    /// Trivial one-dimensional state; placeholder for late-filled results.
    State() : amps_(Vector::Constant(1, Complex{1.0, 0.0})) {}

    /// Computational basis state |index> in a dim-dimensional space.
    static State basis(Eigen::Index dim, Eigen::Index index);

    /// Normalizes v. Throws std::invalid_argument on a (near-)zero vector.
    static State normalized(Vector v);

    /// Equal superposition of all basis states.
    static State uniform(Eigen::Index dim);

    /// Haar-like random state: i.i.d. complex normal entries, normalized.
    static State random(Eigen::Index dim, RandomStream& rng);

    Eigen::Index dim() const { return amps_.size(); }
    const Vector& amplitudes() const { return amps_; }
    Complex amplitude(Eigen::Index i) const { return amps_(i); }

    /// Multiplies by a (presumed unitary) matrix and renormalizes drift.
    void apply_inplace(const Matrix& u);

    /// Multiplies by the global phase e^{i phi}.
    State with_phase(double phi) const;

    double norm() const { return amps_.norm(); }

  private:
    explicit State(Vector v) : amps_(std::move(v)) {}
    Vector amps_;
};

/// <a|b> with conjugation on the first argument. Throws on dim mismatch.
Complex inner_product(const State& a, const State& b);

/// |<a|b>|^2.
double fidelity(const State& a, const State& b);

/// Kronecker product; `a` is the slow (left) factor.
State tensor(const State& a, const State& b);

}  // namespace fpqsim
