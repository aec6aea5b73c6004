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

#include "fpqsim/state.hpp"

namespace fpqsim {

/// Dense Hermitian operator. Hermiticity is validated on construction
/// (entrywise against the conjugate transpose, tolerance 1e-12).
class HermitianOp {
  public:
    explicit HermitianOp(Matrix entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

    static HermitianOp identity(Eigen::Index dim);

  private:
    Matrix entries_;
};

/// Dense unitary operator. The default constructor trusts its input (all
/// unitaries here are built from unitary factors); `checked` validates
/// U^dag U = I within `tol` for boundary inputs and tests.
class UnitaryOp {
  public:
    explicit UnitaryOp(Matrix entries);
    static UnitaryOp checked(Matrix entries, double tol = 1e-10);
    static UnitaryOp identity(Eigen::Index dim);

    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

    bool is_unitary(double tol = 1e-10) const;
    UnitaryOp adjoint() const;
    State apply(const State& s) const;

  private:
    Matrix entries_;
};

/**
 * Full eigendecomposition of a Hermitian operator.
 *
 * Eigenvalues ascend; eigenvectors are orthonormal and phase-fixed so the
 * largest-magnitude component is real positive (ties broken by lowest index),
 * which makes spectra reproducible across runs and platforms.
 * `degeneracy_tol` is 1e-9 times the spectral norm; levels closer than that
 * are treated as degenerate.
 */
struct SpectralData {
    Eigen::VectorXd eigenvalues;
    std::vector<State> eigenvectors;
    double degeneracy_tol = 0.0;

    double ground_energy() const { return eigenvalues(0); }
    double ground_gap() const { return eigenvalues(1) - eigenvalues(0); }
    bool ground_degenerate() const {
        return eigenvalues.size() < 2 || ground_gap() <= degeneracy_tol;
    }
    /// Throws std::runtime_error when the ground level is degenerate.
    void require_nondegenerate_ground(const char* where) const;

    /// Sum of E_j |v_j><v_j| (diagnostic; reconstructs the input operator).
    Matrix reconstruct() const;
};

/// Eigendecomposition via a dense self-adjoint solver plus the deterministic
/// ordering and phase conventions above. Throws on failure to converge.
SpectralData eig_hermitian(const HermitianOp& h);

/// exp(-i 2 pi H t), computed exactly through the eigendecomposition.
/// Requires t >= 0.
UnitaryOp evolve_unitary(const HermitianOp& h, double t);

/// Largest eigenvalue magnitude.
double spectral_norm(const HermitianOp& h);

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);
HermitianOp tensor(const HermitianOp& a, const HermitianOp& b);

/// Kronecker product of raw matrices; `a` is the slow (left) factor.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace fpqsim
