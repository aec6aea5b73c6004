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

#include "fpqsim/linear_op.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpqsim {

State LinearUnitary::apply(const State& s, bool adjoint) const {
    Vector v = s.amplitudes();
    apply_inplace(v, adjoint);
    return State::normalized(std::move(v));
}

void DenseUnitary::apply_inplace(Vector& psi, bool adjoint) const {
    if (psi.size() != u_.dim()) {
        throw std::invalid_argument("DenseUnitary: dimension mismatch");
    }
    if (adjoint) {
        psi = u_.entries().adjoint() * psi;
    } else {
        psi = u_.entries() * psi;
    }
}

ComposedUnitary::ComposedUnitary(std::vector<Step> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) {
        throw std::invalid_argument("ComposedUnitary: empty product");
    }
    dim_ = steps_.front().op->dim();
    for (const Step& s : steps_) {
        if (!s.op || s.op->dim() != dim_) {
            throw std::invalid_argument("ComposedUnitary: factor dimension mismatch");
        }
    }
}

void ComposedUnitary::apply_inplace(Vector& psi, bool adjoint) const {
    if (!adjoint) {
        for (const Step& s : steps_) {
            s.op->apply_inplace(psi, s.adjoint);
        }
    } else {
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            it->op->apply_inplace(psi, !it->adjoint);
        }
    }
}

UnitaryOp materialize(const LinearUnitary& op, bool adjoint) {
    const Eigen::Index d = op.dim();
    Matrix m(d, d);
    Vector col(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        col.setZero();
        col(j) = Complex{1.0, 0.0};
        op.apply_inplace(col, adjoint);
        m.col(j) = col;
    }
    return UnitaryOp(std::move(m));
}

namespace {

// Radix-2 transform of one contiguous block, sign = +1 for the forward
// kernel exp(+2 pi i k z / n). Twiddles resync from std::polar every 64
// butterflies to keep the accumulated product near machine precision.
void fft_block(Complex* a, std::size_t n, int sign) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            Complex w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                if (k % 64 == 0) {
                    w = std::polar(1.0, ang * static_cast<double>(k));
                }
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

void fourier_ancilla_inplace(Vector& psi, Eigen::Index system_dim, int l, bool adjoint) {
    const Eigen::Index n = Eigen::Index{1} << l;
    if (psi.size() != system_dim * n) {
        throw std::invalid_argument("fourier_ancilla_inplace: dimension mismatch");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index i = 0; i < system_dim; ++i) {
        Complex* block = psi.data() + i * n;
        fft_block(block, static_cast<std::size_t>(n), adjoint ? -1 : +1);
        for (Eigen::Index z = 0; z < n; ++z) {
            block[z] *= scale;
        }
    }
}

}  // namespace fpqsim
