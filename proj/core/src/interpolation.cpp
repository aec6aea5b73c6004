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

#include "fpqsim/interpolation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace fpqsim {

namespace {

HermitianOp blend(const HermitianOp& h0, const HermitianOp& h1, double s) {
    return HermitianOp((1.0 - s) * h0.entries() + s * h1.entries());
}

void require_unit_interval(double s, const char* what) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": s must lie in [0, 1]");
    }
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            entries.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    return entries;
}

Matrix matrix_from_json(const nlohmann::json& entries, Eigen::Index dim) {
    if (entries.size() != static_cast<std::size_t>(dim * dim)) {
        throw std::invalid_argument("problem_from_json: matrix entry count mismatch");
    }
    Matrix m(dim, dim);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j, ++k) {
            m(i, j) = Complex{entries[k][0].get<double>(), entries[k][1].get<double>()};
        }
    }
    return m;
}

}  // namespace

InterpolationProblem InterpolationProblem::create(HermitianOp h0, HermitianOp h1,
                                                  int grid_resolution,
                                                  std::string family,
                                                  std::uint64_t seed) {
    if (h0.dim() != h1.dim()) {
        throw std::invalid_argument("InterpolationProblem: operator dimensions differ");
    }
    InterpolationProblem p;
    p.gamma_ = spectral_norm(h0) + spectral_norm(h1);
    GapScanResult scan = gap_scan(h0, h1, grid_resolution);
    p.h0_ = std::move(h0);
    p.h1_ = std::move(h1);
    p.min_gap_ = scan.min_gap;
    p.gap_profile_ = std::move(scan.profile);
    p.grid_resolution_ = grid_resolution;
    p.family_ = std::move(family);
    p.seed_ = seed;
    return p;
}

HermitianOp interpolate(const HermitianOp& h0, const HermitianOp& h1, double s) {
    require_unit_interval(s, "interpolate");
    if (h0.dim() != h1.dim()) {
        throw std::invalid_argument("interpolate: operator dimensions differ");
    }
    return blend(h0, h1, s);
}

HermitianOp interpolate(const InterpolationProblem& p, double s) {
    require_unit_interval(s, "interpolate");
    return blend(p.h0(), p.h1(), s);
}

GapScanResult gap_scan(const HermitianOp& h0, const HermitianOp& h1, int resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("gap_scan: resolution must be at least 2");
    }
    GapScanResult out;
    out.profile.reserve(static_cast<std::size_t>(resolution));
    out.min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < resolution; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(resolution - 1);
        const SpectralData spec = eig_hermitian(blend(h0, h1, s));
        spec.require_nondegenerate_ground("gap_scan");
        const double gap = spec.ground_gap();
        out.profile.push_back({s, gap});
        out.min_gap = std::min(out.min_gap, gap);
    }
    return out;
}

GapScanResult gap_scan(const InterpolationProblem& p) {
    return gap_scan(p.h0(), p.h1(), p.grid_resolution());
}

OverlapBoundCheck overlap_bound_check(const InterpolationProblem& p, double s,
                                      double delta) {
    require_unit_interval(s, "overlap_bound_check");
    require_unit_interval(s + delta, "overlap_bound_check");
    const SpectralData a = eig_hermitian(interpolate(p, s));
    const SpectralData b = eig_hermitian(interpolate(p, s + delta));
    a.require_nondegenerate_ground("overlap_bound_check");
    b.require_nondegenerate_ground("overlap_bound_check");

    OverlapBoundCheck out;
    out.overlap_sq = fidelity(b.eigenvectors[0], a.eigenvectors[0]);
    const double ratio = delta * p.gamma() / p.min_gap();
    out.bound = 1.0 - ratio * ratio;
    out.holds = out.overlap_sq >= out.bound - 1e-9;
    return out;
}

double perturbation_overlap(const InterpolationProblem& p, double s, double delta) {
    require_unit_interval(s, "perturbation_overlap");
    require_unit_interval(s + delta, "perturbation_overlap");
    const SpectralData spec = eig_hermitian(interpolate(p, s));
    spec.require_nondegenerate_ground("perturbation_overlap");

    const Matrix diff = p.h0().entries() - p.h1().entries();
    const Vector& ground = spec.eigenvectors[0].amplitudes();
    double sum = 0.0;
    for (Eigen::Index j = 1; j < p.dim(); ++j) {
        const double denom = spec.eigenvalues(0) - spec.eigenvalues(j);
        if (std::abs(denom) <= spec.degeneracy_tol) {
            throw std::runtime_error("perturbation_overlap: degenerate spectrum");
        }
        const Complex elem =
            ground.dot(diff * spec.eigenvectors[static_cast<std::size_t>(j)].amplitudes());
        sum += std::norm(elem) / (denom * denom);
    }
    return 1.0 - delta * delta * sum;
}

InterpolationProblem make_grover_instance(int n_qubits, std::uint64_t seed) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw std::invalid_argument("make_grover_instance: n_qubits must be in [1, 6]");
    }
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    RandomStream rng(seed);
    const Eigen::Index target = static_cast<Eigen::Index>(
        rng.uniform_index(static_cast<std::uint64_t>(dim)));

    const Vector u = State::uniform(dim).amplitudes();
    const Vector w = State::basis(dim, target).amplitudes();
    Matrix m0 = Matrix::Identity(dim, dim) - u * u.adjoint();
    Matrix m1 = Matrix::Identity(dim, dim) - w * w.adjoint();
    return InterpolationProblem::create(HermitianOp(std::move(m0)),
                                        HermitianOp(std::move(m1)),
                                        InterpolationProblem::kDefaultGridResolution,
                                        "grover", seed);
}

InterpolationProblem make_random_instance(Eigen::Index dim, double min_gap_floor,
                                          std::uint64_t seed) {
    if (dim < 2) {
        throw std::invalid_argument("make_random_instance: dim must be at least 2");
    }
    RandomStream rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto draw = [&rng, dim]() {
            Matrix raw(dim, dim);
            for (Eigen::Index i = 0; i < dim; ++i) {
                for (Eigen::Index j = 0; j < dim; ++j) {
                    raw(i, j) = rng.normal_complex();
                }
            }
            return HermitianOp(Matrix(0.5 * (raw + raw.adjoint().eval())));
        };
        HermitianOp h0 = draw();
        HermitianOp h1 = draw();
        const double gamma = spectral_norm(h0) + spectral_norm(h1);
        const double scale = 4.0 / gamma;
        h0 = HermitianOp(Matrix(scale * h0.entries()));
        h1 = HermitianOp(Matrix(scale * h1.entries()));
        try {
            InterpolationProblem p = InterpolationProblem::create(
                std::move(h0), std::move(h1),
                InterpolationProblem::kDefaultGridResolution, "random", seed);
            if (p.min_gap() >= min_gap_floor) {
                return p;
            }
        } catch (const std::runtime_error&) {
            // degenerate sample; reject and redraw
        }
    }
    throw std::runtime_error("make_random_instance: rejection budget exhausted");
}

InterpolationProblem make_two_level_instance(double gap) {
    if (!(gap > 0.0)) {
        throw std::invalid_argument("make_two_level_instance: gap must be positive");
    }
    // H(s) = ((2s-1)/2) sigma_z + (gap/2) sigma_x: an avoided crossing whose
    // gap profile is sqrt((2s-1)^2 + gap^2), minimized at s = 1/2.
    Matrix m0(2, 2), m1(2, 2);
    m0 << Complex{-0.5, 0.0}, Complex{gap / 2.0, 0.0},
        Complex{gap / 2.0, 0.0}, Complex{0.5, 0.0};
    m1 << Complex{0.5, 0.0}, Complex{gap / 2.0, 0.0},
        Complex{gap / 2.0, 0.0}, Complex{-0.5, 0.0};
    return InterpolationProblem::create(HermitianOp(std::move(m0)),
                                        HermitianOp(std::move(m1)),
                                        InterpolationProblem::kDefaultGridResolution,
                                        "two_level", 0);
}

std::string problem_to_json(const InterpolationProblem& p) {
    nlohmann::json doc;
    doc["dim"] = p.dim();
    doc["family"] = p.family();
    doc["seed"] = p.seed();
    doc["gamma"] = p.gamma();
    doc["min_gap"] = p.min_gap();
    doc["h0"] = matrix_to_json(p.h0().entries());
    doc["h1"] = matrix_to_json(p.h1().entries());
    return doc.dump();
}

InterpolationProblem problem_from_json(const std::string& doc) {
    const nlohmann::json j = nlohmann::json::parse(doc);
    const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
    InterpolationProblem p = InterpolationProblem::create(
        HermitianOp(matrix_from_json(j.at("h0"), dim)),
        HermitianOp(matrix_from_json(j.at("h1"), dim)),
        InterpolationProblem::kDefaultGridResolution, j.at("family").get<std::string>(),
        j.at("seed").get<std::uint64_t>());
    // Keep the stored scale data verbatim so a round trip is byte-exact;
    // the recomputed values agree to solver precision.
    p.gamma_ = j.at("gamma").get<double>();
    p.min_gap_ = j.at("min_gap").get<double>();
    return p;
}

}  // namespace fpqsim
