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

#include "fpqsim/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace fpqsim {

namespace {

constexpr double kProjectorTol = 1e-9;

std::size_t draw_bucket(const std::vector<double>& probs, RandomStream& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t pick = probs.size() - 1;  // last bucket absorbs rounding residue
    for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) {
            pick = k;
            break;
        }
    }
    if (probs[pick] <= 1e-300) {
        // Rounding pushed the draw into an empty branch; take the likeliest.
        std::size_t best = 0;
        for (std::size_t k = 1; k < probs.size(); ++k) {
            if (probs[k] > probs[best]) {
                best = k;
            }
        }
        pick = best;
    }
    return pick;
}

}  // namespace

MeasurementOutcome measure_projective(const State& s,
                                      const std::vector<Matrix>& projectors,
                                      RandomStream& rng) {
    if (projectors.empty()) {
        throw std::invalid_argument("measure_projective: empty projector set");
    }
    const Eigen::Index d = s.dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& p : projectors) {
        if (p.rows() != d || p.cols() != d) {
            throw std::invalid_argument("measure_projective: projector dimension mismatch");
        }
        if ((p - p.adjoint()).cwiseAbs().maxCoeff() > kProjectorTol) {
            throw std::invalid_argument("measure_projective: projector not Hermitian");
        }
        if ((p * p - p).cwiseAbs().maxCoeff() > kProjectorTol) {
            throw std::invalid_argument("measure_projective: projector not idempotent");
        }
        sum += p;
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw std::invalid_argument("measure_projective: projectors do not sum to identity");
    }

    std::vector<double> probs(projectors.size());
    std::vector<Vector> branches(projectors.size());
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        branches[k] = projectors[k] * s.amplitudes();
        probs[k] = branches[k].squaredNorm();
    }

    const std::size_t k = draw_bucket(probs, rng);
    return MeasurementOutcome{static_cast<Eigen::Index>(k),
                              State::normalized(std::move(branches[k])), probs[k]};
}

MeasurementOutcome measure_in_basis(const State& s,
                                    const std::vector<State>& basis,
                                    RandomStream& rng) {
    if (basis.empty()) {
        throw std::invalid_argument("measure_in_basis: empty basis");
    }
    std::vector<double> probs(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        probs[j] = std::norm(inner_product(basis[j], s));
    }
    const std::size_t j = draw_bucket(probs, rng);
    return MeasurementOutcome{static_cast<Eigen::Index>(j), basis[j], probs[j]};
}

}  // namespace fpqsim
