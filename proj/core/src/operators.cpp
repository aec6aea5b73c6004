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

#include "fpqsim/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpqsim {

namespace {

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square");
    }
}

}  // namespace

HermitianOp::HermitianOp(Matrix entries) : entries_(std::move(entries)) {
    require_square(entries_, "HermitianOp");
    const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    if (dev > 1e-12 * scale) {
        throw std::invalid_argument("HermitianOp: matrix is not Hermitian");
    }
    // Symmetrize away the sub-tolerance residue so downstream solves see an
    // exactly Hermitian matrix.
    entries_ = 0.5 * (entries_ + entries_.adjoint().eval());
}

HermitianOp HermitianOp::identity(Eigen::Index dim) {
    return HermitianOp(Matrix::Identity(dim, dim));
}

UnitaryOp::UnitaryOp(Matrix entries) : entries_(std::move(entries)) {
    require_square(entries_, "UnitaryOp");
}

UnitaryOp UnitaryOp::checked(Matrix entries, double tol) {
    UnitaryOp u(std::move(entries));
    if (!u.is_unitary(tol)) {
        throw std::invalid_argument("UnitaryOp::checked: matrix is not unitary");
    }
    return u;
}

UnitaryOp UnitaryOp::identity(Eigen::Index dim) {
    return UnitaryOp(Matrix::Identity(dim, dim));
}

bool UnitaryOp::is_unitary(double tol) const {
    const Matrix residue =
        entries_.adjoint() * entries_ - Matrix::Identity(dim(), dim());
    return residue.cwiseAbs().maxCoeff() <= tol;
}

UnitaryOp UnitaryOp::adjoint() const { return UnitaryOp(entries_.adjoint()); }

State UnitaryOp::apply(const State& s) const {
    State out = s;
    out.apply_inplace(entries_);
    return out;
}

void SpectralData::require_nondegenerate_ground(const char* where) const {
    if (ground_degenerate()) {
        throw std::runtime_error(std::string(where) +
                                 ": degenerate ground state (gap below tolerance)");
    }
}

Matrix SpectralData::reconstruct() const {
    const Eigen::Index d = eigenvalues.size();
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Vector& v = eigenvectors[static_cast<std::size_t>(j)].amplitudes();
        m.noalias() += eigenvalues(j) * (v * v.adjoint());
    }
    return m;
}

SpectralData eig_hermitian(const HermitianOp& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: solver failed to converge");
    }

    SpectralData out;
    out.eigenvalues = solver.eigenvalues();  // ascending by Eigen contract

    const Eigen::Index d = h.dim();
    const double norm = std::max(std::abs(out.eigenvalues(0)),
                                 std::abs(out.eigenvalues(d - 1)));
    out.degeneracy_tol = 1e-9 * norm;

    out.eigenvectors.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) {
        Vector v = solver.eigenvectors().col(j);
        // Phase convention: largest-magnitude component real positive,
        // ties broken by lowest index.
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double mag = std::abs(v(i));
            if (mag > best + 1e-15) {
                best = mag;
                pivot = i;
            }
        }
        v *= std::conj(v(pivot)) / std::abs(v(pivot));
        out.eigenvectors.push_back(State::normalized(std::move(v)));
    }
    return out;
}

UnitaryOp evolve_unitary(const HermitianOp& h, double t) {
    if (t < 0.0) {
        throw std::invalid_argument("evolve_unitary: t must be nonnegative");
    }
    const SpectralData spec = eig_hermitian(h);
    const Eigen::Index d = h.dim();
    Matrix u = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Vector& v = spec.eigenvectors[static_cast<std::size_t>(j)].amplitudes();
        const Complex phase =
            std::polar(1.0, -2.0 * std::numbers::pi * spec.eigenvalues(j) * t);
        u.noalias() += phase * (v * v.adjoint());
    }
    return UnitaryOp(std::move(u));
}

double spectral_norm(const HermitianOp& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_norm: solver failed to converge");
    }
    const auto& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b) {
    return UnitaryOp(kron(a.entries(), b.entries()));
}

HermitianOp tensor(const HermitianOp& a, const HermitianOp& b) {
    return HermitianOp(kron(a.entries(), b.entries()));
}

}  // namespace fpqsim
