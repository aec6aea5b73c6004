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

#include "fpqsim/state.hpp"

#include <cmath>
#include <stdexcept>

namespace fpqsim {

State State::basis(Eigen::Index dim, Eigen::Index index) {
    if (dim < 1 || index < 0 || index >= dim) {
        throw std::invalid_argument("State::basis: index out of range");
    }
    Vector v = Vector::Zero(dim);
    v(index) = Complex{1.0, 0.0};
    return State(std::move(v));
}

State State::normalized(Vector v) {
    const double n = v.norm();
    if (!(n > 1e-14)) {
        throw std::invalid_argument("State::normalized: zero vector");
    }
    v /= n;
    return State(std::move(v));
}

State State::uniform(Eigen::Index dim) {
    if (dim < 1) {
        throw std::invalid_argument("State::uniform: dim must be positive");
    }
    Vector v = Vector::Constant(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
    return State(std::move(v));
}

State State::random(Eigen::Index dim, RandomStream& rng) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = rng.normal_complex();
    }
    return normalized(std::move(v));
}

void State::apply_inplace(const Matrix& u) {
    if (u.cols() != amps_.size()) {
        throw std::invalid_argument("State::apply_inplace: dimension mismatch");
    }
    amps_ = u * amps_;
    const double n = amps_.norm();
    if (std::abs(n - 1.0) > 1e-13) {
        amps_ /= n;
    }
}

State State::with_phase(double phi) const {
    Vector v = amps_ * std::polar(1.0, phi);
    return State(std::move(v));
}

Complex inner_product(const State& a, const State& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const State& a, const State& b) {
    return std::norm(inner_product(a, b));
}

State tensor(const State& a, const State& b) {
    Vector v(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        v.segment(i * b.dim(), b.dim()) = a.amplitude(i) * b.amplitudes();
    }
    return State::normalized(std::move(v));
}

}  // namespace fpqsim
