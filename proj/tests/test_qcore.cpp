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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include <fpqsim/measurement.hpp>
#include <fpqsim/operators.hpp>

using namespace fpqsim;

namespace {

HermitianOp random_hermitian(Eigen::Index dim, RandomStream& rng) {
    Matrix raw(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            raw(i, j) = rng.normal_complex();
        }
    }
    return HermitianOp(Matrix(0.5 * (raw + raw.adjoint().eval())));
}

}  // namespace

TEST_CASE("random stream is deterministic per seed") {
    RandomStream a(123), b(123), c(124);
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    bool all_equal = true;
    RandomStream a2(123);
    for (int i = 0; i < 10; ++i) {
        all_equal = all_equal && (a2.uniform() == c.uniform());
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("inner product basics") {
    const State zero = State::basis(4, 0);
    const State one = State::basis(4, 1);
    CHECK(inner_product(zero, zero) == Complex{1.0, 0.0});
    CHECK(inner_product(zero, one) == Complex{0.0, 0.0});

    RandomStream rng(7);
    const State a = State::random(6, rng);
    const double theta = 1.234;
    const State b = a.with_phase(theta);
    const Complex ip = inner_product(a, b);
    CHECK(std::abs(ip - std::polar(1.0, theta)) < 1e-12);
    CHECK(std::abs(ip) <= 1.0 + 1e-12);

    CHECK_THROWS_AS((void)inner_product(zero, State::basis(3, 0)), std::invalid_argument);
}

TEST_CASE("eig of a diagonal matrix sorts ascending") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    const SpectralData spec = eig_hermitian(HermitianOp(m));
    CHECK(spec.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spec.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fidelity(spec.eigenvectors[0], State::basis(3, 1)) == doctest::Approx(1.0));
    CHECK(fidelity(spec.eigenvectors[1], State::basis(3, 2)) == doctest::Approx(1.0));
    CHECK(fidelity(spec.eigenvectors[2], State::basis(3, 0)) == doctest::Approx(1.0));
}

TEST_CASE("eig of the bit-flip operator") {
    Matrix m(2, 2);
    m << Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0};
    const SpectralData spec = eig_hermitian(HermitianOp(m));
    CHECK(spec.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(spec.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));

    Vector minus(2), plus(2);
    minus << Complex{1, 0}, Complex{-1, 0};
    plus << Complex{1, 0}, Complex{1, 0};
    CHECK(fidelity(spec.eigenvectors[0], State::normalized(minus)) == doctest::Approx(1.0));
    CHECK(fidelity(spec.eigenvectors[1], State::normalized(plus)) == doctest::Approx(1.0));
}

TEST_CASE("eig reconstruction and orthonormality on random operators") {
    RandomStream rng(99);
    for (Eigen::Index dim : {4, 8, 16}) {
        const HermitianOp h = random_hermitian(dim, rng);
        const SpectralData spec = eig_hermitian(h);
        CHECK((spec.reconstruct() - h.entries()).cwiseAbs().maxCoeff() < 1e-9);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                const Complex ip =
                    inner_product(spec.eigenvectors[i], spec.eigenvectors[j]);
                CHECK(std::abs(ip - (i == j ? Complex{1, 0} : Complex{0, 0})) < 1e-10);
            }
        }
        // eigenvalue equation
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Vector& v = spec.eigenvectors[j].amplitudes();
            CHECK((h.entries() * v - spec.eigenvalues(j) * v).norm() < 1e-9);
        }
    }
}

TEST_CASE("eig phase convention is reproducible") {
    RandomStream rng(5);
    const HermitianOp h = random_hermitian(8, rng);
    const SpectralData a = eig_hermitian(h);
    const SpectralData b = eig_hermitian(h);
    for (std::size_t j = 0; j < a.eigenvectors.size(); ++j) {
        CHECK((a.eigenvectors[j].amplitudes() - b.eigenvectors[j].amplitudes()).norm() ==
              0.0);
        // pivot component real positive
        const Vector& v = a.eigenvectors[j].amplitudes();
        Eigen::Index pivot = 0;
        v.cwiseAbs().maxCoeff(&pivot);
        CHECK(v(pivot).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(v(pivot).real() > 0.0);
    }
}

TEST_CASE("degenerate ground detection") {
    const SpectralData spec = eig_hermitian(HermitianOp::identity(4));
    CHECK(spec.ground_degenerate());
    CHECK_THROWS_AS(spec.require_nondegenerate_ground("test"), std::runtime_error);

    Matrix m = Matrix::Zero(2, 2);
    m(1, 1) = 1.0;
    CHECK_FALSE(eig_hermitian(HermitianOp(m)).ground_degenerate());
}

TEST_CASE("non-Hermitian input is rejected") {
    Matrix m(2, 2);
    m << Complex{0, 0}, Complex{1, 0}, Complex{2, 0}, Complex{0, 0};
    CHECK_THROWS_AS(HermitianOp{m}, std::invalid_argument);
}

TEST_CASE("evolution operator basics") {
    RandomStream rng(11);
    const HermitianOp h = random_hermitian(4, rng);

    SUBCASE("zero time is the identity") {
        const UnitaryOp u = evolve_unitary(h, 0.0);
        CHECK((u.entries() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("diagonal exponentiation") {
        Matrix d = Matrix::Zero(2, 2);
        d(1, 1) = 1.0;
        const UnitaryOp u = evolve_unitary(HermitianOp(d), 0.5);
        CHECK(std::abs(u.entries()(0, 0) - Complex{1, 0}) < 1e-12);
        CHECK(std::abs(u.entries()(1, 1) - Complex{-1, 0}) < 1e-12);
        CHECK(std::abs(u.entries()(0, 1)) < 1e-12);
    }
    SUBCASE("unitarity") {
        const UnitaryOp u = evolve_unitary(h, 0.1);
        CHECK(u.is_unitary(1e-10));
    }
    SUBCASE("group property") {
        const UnitaryOp u1 = evolve_unitary(h, 0.3);
        const UnitaryOp u2 = evolve_unitary(h, 0.45);
        const UnitaryOp u12 = evolve_unitary(h, 0.75);
        CHECK((u1.entries() * u2.entries() - u12.entries()).cwiseAbs().maxCoeff() <
              1e-10);
    }
    SUBCASE("negative time rejected") {
        CHECK_THROWS_AS((void)evolve_unitary(h, -1.0), std::invalid_argument);
    }
}

TEST_CASE("tensor products") {
    SUBCASE("identities") {
        const UnitaryOp i4 = tensor(UnitaryOp::identity(2), UnitaryOp::identity(2));
        CHECK((i4.entries() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("basis bookkeeping, system slow") {
        const State s = tensor(State::basis(2, 0), State::basis(2, 1));
        CHECK(s.dim() == 4);
        CHECK(std::abs(s.amplitude(1) - Complex{1, 0}) < 1e-15);
    }
    SUBCASE("mixed product property") {
        RandomStream rng(3);
        const HermitianOp ha = random_hermitian(2, rng);
        const HermitianOp hb = random_hermitian(3, rng);
        const UnitaryOp a = evolve_unitary(ha, 0.2);
        const UnitaryOp b = evolve_unitary(hb, 0.7);
        const State x = State::random(2, rng);
        const State y = State::random(3, rng);
        const State lhs = tensor(a, b).apply(tensor(x, y));
        const State rhs = tensor(a.apply(x), b.apply(y));
        CHECK((lhs.amplitudes() - rhs.amplitudes()).norm() < 1e-12);
    }
}

TEST_CASE("norm preservation under unitaries") {
    RandomStream rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const HermitianOp h = random_hermitian(8, rng);
        const UnitaryOp u = evolve_unitary(h, rng.uniform());
        State s = State::random(8, rng);
        s.apply_inplace(u.entries());
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("projective measurement") {
    RandomStream rng(23);

    SUBCASE("eigenstate input is deterministic") {
        const State s = State::basis(2, 0);
        std::vector<Matrix> projectors(2);
        projectors[0] = Matrix::Zero(2, 2);
        projectors[0](0, 0) = 1.0;
        projectors[1] = Matrix::Zero(2, 2);
        projectors[1](1, 1) = 1.0;
        for (int i = 0; i < 50; ++i) {
            const MeasurementOutcome m = measure_projective(s, projectors, rng);
            CHECK(m.outcome == 0);
            CHECK(m.probability == doctest::Approx(1.0));
        }
    }

    SUBCASE("frequencies track the squared amplitudes") {
        Vector v(2);
        v << Complex{1, 0}, Complex{1, 0};
        const State s = State::normalized(std::move(v));
        std::vector<Matrix> projectors(2);
        projectors[0] = Matrix::Zero(2, 2);
        projectors[0](0, 0) = 1.0;
        projectors[1] = Matrix::Zero(2, 2);
        projectors[1](1, 1) = 1.0;
        int zeros = 0;
        const int trials = 100000;
        for (int i = 0; i < trials; ++i) {
            if (measure_projective(s, projectors, rng).outcome == 0) {
                ++zeros;
            }
        }
        CHECK(std::abs(static_cast<double>(zeros) / trials - 0.5) < 0.01);
    }

    SUBCASE("trivial measurement leaves the state") {
        const State s = State::random(3, rng);
        std::vector<Matrix> projectors{Matrix::Identity(3, 3)};
        const MeasurementOutcome m = measure_projective(s, projectors, rng);
        CHECK(m.outcome == 0);
        CHECK((m.state.amplitudes() - s.amplitudes()).norm() < 1e-12);
    }

    SUBCASE("incomplete projector sets are rejected") {
        const State s = State::basis(2, 0);
        std::vector<Matrix> projectors(1);
        projectors[0] = Matrix::Zero(2, 2);
        projectors[0](0, 0) = 1.0;
        CHECK_THROWS_AS((void)measure_projective(s, projectors, rng),
                        std::invalid_argument);
    }

    SUBCASE("statistics agree with the basis shortcut within 3 sigma") {
        RandomStream state_rng(31);
        const HermitianOp h = random_hermitian(4, state_rng);
        const SpectralData spec = eig_hermitian(h);
        const State s = State::random(4, state_rng);
        std::vector<Matrix> projectors;
        for (const State& v : spec.eigenvectors) {
            projectors.push_back(v.amplitudes() * v.amplitudes().adjoint());
        }
        const int trials = 20000;
        Eigen::Vector4d freq_a = Eigen::Vector4d::Zero();
        Eigen::Vector4d freq_b = Eigen::Vector4d::Zero();
        for (int i = 0; i < trials; ++i) {
            freq_a(measure_projective(s, projectors, rng).outcome) += 1.0;
            freq_b(measure_in_basis(s, spec.eigenvectors, rng).outcome) += 1.0;
        }
        for (int k = 0; k < 4; ++k) {
            const double p = std::norm(inner_product(spec.eigenvectors[k], s));
            const double sigma = std::sqrt(std::max(p * (1 - p), 1e-9) / trials);
            CHECK(std::abs(freq_a(k) / trials - p) < 4 * sigma + 1e-3);
            CHECK(std::abs(freq_b(k) / trials - p) < 4 * sigma + 1e-3);
        }
    }

    SUBCASE("born statistics within 3 sigma over 1e4 trials") {
        const State s = State::random(3, rng);
        Matrix p0 = Matrix::Zero(3, 3);
        p0(0, 0) = 1.0;
        Matrix p1 = Matrix::Identity(3, 3) - p0;
        std::vector<Matrix> projectors{p0, p1};
        const double p = std::norm(s.amplitude(0));
        const int trials = 10000;
        int hits = 0;
        for (int i = 0; i < trials; ++i) {
            if (measure_projective(s, projectors, rng).outcome == 0) {
                ++hits;
            }
        }
        const double sigma = std::sqrt(p * (1 - p) / trials);
        CHECK(std::abs(static_cast<double>(hits) / trials - p) < 3 * sigma + 1e-3);
    }
}
