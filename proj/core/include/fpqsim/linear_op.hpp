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

#include <memory>
#include <vector>

#include "fpqsim/operators.hpp"

namespace fpqsim {

/**
 * A unitary given by its action on state vectors. Composite-register
 * operators (phase estimation, its boosted variants) are applied through
 * this interface instead of materialized, which keeps the simulation cost
 * linear in the register size per application.
 */
class LinearUnitary {
  public:
    virtual ~LinearUnitary() = default;
    virtual Eigen::Index dim() const = 0;
    virtual void apply_inplace(Vector& psi, bool adjoint) const = 0;

    State apply(const State& s, bool adjoint = false) const;
};

/// Adaptor for a dense matrix.
class DenseUnitary final : public LinearUnitary {
  public:
    explicit DenseUnitary(UnitaryOp u) : u_(std::move(u)) {}
    Eigen::Index dim() const override { return u_.dim(); }
    void apply_inplace(Vector& psi, bool adjoint) const override;
    const UnitaryOp& unitary() const { return u_; }

  private:
    UnitaryOp u_;
};

/// Product of factors, applied first-to-last. The adjoint application
/// reverses the order and flips each factor.
class ComposedUnitary final : public LinearUnitary {
  public:
    struct Step {
        std::shared_ptr<const LinearUnitary> op;
        bool adjoint = false;
    };

    explicit ComposedUnitary(std::vector<Step> steps);
    Eigen::Index dim() const override { return dim_; }
    void apply_inplace(Vector& psi, bool adjoint) const override;
    std::size_t size() const { return steps_.size(); }

  private:
    std::vector<Step> steps_;
    Eigen::Index dim_ = 0;
};

/// Builds the dense matrix by applying `op` to every basis vector.
UnitaryOp materialize(const LinearUnitary& op, bool adjoint = false);

/**
 * In-place Fourier transform of the ancilla factor of a composite register
 * (system slow, ancilla fast; ancilla dimension 2^l). The forward transform
 * matches the matrix F[k][z] = 2^{-l/2} exp(+2 pi i k z / 2^l); the adjoint
 * conjugates the kernel. Radix-2, O(2^l l) per system row.
 */
void fourier_ancilla_inplace(Vector& psi, Eigen::Index system_dim, int l, bool adjoint);

}  // namespace fpqsim
