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

#include <fpqsim/interpolation.hpp>

using namespace fpqsim;

namespace {

// Closed-form gap of the projector-pair family on N states:
// sqrt(1 - 4 (1 - 1/N) s (1 - s)).
double grover_gap(double n, double s) {
    return std::sqrt(1.0 - 4.0 * (1.0 - 1.0 / n) * s * (1.0 - s));
}

InterpolationProblem diag_problem(double a0, double a1, double b0, double b1) {
    Matrix m0 = Matrix::Zero(2, 2), m1 = Matrix::Zero(2, 2);
    m0(0, 0) = a0;
    m0(1, 1) = a1;
    m1(0, 0) = b0;
    m1(1, 1) = b1;
    return InterpolationProblem::create(HermitianOp(m0), HermitianOp(m1));
}

}  // namespace

TEST_CASE("interpolate endpoints and midpoint") {
    // Raw-operator form: the crossing pair is degenerate at s = 1/2, which
    // the blend arithmetic itself must not care about.
    Matrix m0 = Matrix::Zero(2, 2), m1 = Matrix::Zero(2, 2);
    m0(1, 1) = 1.0;
    m1(0, 0) = 1.0;
    const HermitianOp h0(m0), h1(m1);
    CHECK((interpolate(h0, h1, 0.0).entries() - h0.entries()).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK((interpolate(h0, h1, 1.0).entries() - h1.entries()).cwiseAbs().maxCoeff() ==
          0.0);
    const Matrix mid = interpolate(h0, h1, 0.5).entries();
    CHECK(std::abs(mid(0, 0) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(mid(1, 1) - Complex{0.5, 0.0}) < 1e-15);
    CHECK_THROWS_AS((void)interpolate(h0, h1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)interpolate(h0, h1, -0.1), std::invalid_argument);

    const InterpolationProblem p = diag_problem(0.0, 1.0, 0.25, 1.5);
    CHECK((interpolate(p, 0.0).entries() - p.h0().entries()).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK((interpolate(p, 1.0).entries() - p.h1().entries()).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("gap scan of a constant family") {
    const InterpolationProblem p = diag_problem(0.0, 1.0, 0.0, 1.0);
    CHECK(p.min_gap() == doctest::Approx(1.0).epsilon(1e-12));
    for (const GapPoint& g : p.gap_profile()) {
        CHECK(g.gap == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gap scan matches the closed-form projector-pair profile") {
    const InterpolationProblem p = make_grover_instance(2, 7);  // N = 4
    CHECK(p.gamma() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.min_gap() == doctest::Approx(0.5).epsilon(1e-10));
    for (const GapPoint& g : p.gap_profile()) {
        CHECK(g.gap == doctest::Approx(grover_gap(4.0, g.s)).epsilon(1e-10));
    }
}

TEST_CASE("gap profile agrees with a pointwise eigensolve") {
    const InterpolationProblem p = make_random_instance(6, 0.05, 21);
    for (int k = 0; k < 10; ++k) {
        const GapPoint& g = p.gap_profile()[static_cast<std::size_t>(k) * 25];
        const SpectralData spec = eig_hermitian(interpolate(p, g.s));
        CHECK(std::abs(g.gap - spec.ground_gap()) < 1e-10);
    }
}

TEST_CASE("refining the grid never raises the reported minimum") {
    const InterpolationProblem p = make_random_instance(4, 0.05, 33);
    const GapScanResult coarse = gap_scan(p.h0(), p.h1(), 257);
    const GapScanResult fine = gap_scan(p.h0(), p.h1(), 513);
    CHECK(fine.min_gap <= coarse.min_gap + 1e-9);
}

TEST_CASE("degenerate families are rejected by the scan") {
    Matrix m0 = Matrix::Zero(2, 2);  // both levels identical at s = 0
    Matrix m1 = Matrix::Zero(2, 2);
    m1(0, 0) = 1.0;
    m1(1, 1) = -1.0;
    CHECK_THROWS_AS(
        (void)InterpolationProblem::create(HermitianOp(m0), HermitianOp(m1)),
        std::runtime_error);
}

TEST_CASE("ground overlap bound") {
    SUBCASE("zero step is exact") {
        const InterpolationProblem p = make_grover_instance(2, 7);
        const OverlapBoundCheck c = overlap_bound_check(p, 0.3, 0.0);
        CHECK(c.overlap_sq == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.bound == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.holds);
    }
    SUBCASE("projector-pair family at the crossing") {
        const InterpolationProblem p = make_grover_instance(2, 7);
        const OverlapBoundCheck c = overlap_bound_check(p, 0.5, 0.01);
        CHECK(c.holds);
    }
    SUBCASE("random sweep inside the step budget") {
        RandomStream rng(5);
        const InterpolationProblem p = make_random_instance(8, 0.05, 11);
        const double max_step = p.min_gap() / (2.0 * p.gamma());
        for (int i = 0; i < 100; ++i) {
            const double delta = rng.uniform() * max_step;
            const double s = rng.uniform() * (1.0 - delta);
            CHECK(overlap_bound_check(p, s, delta).holds);
        }
    }
}

TEST_CASE("perturbative overlap estimate") {
    SUBCASE("zero step gives one") {
        const InterpolationProblem p = make_grover_instance(2, 7);
        CHECK(perturbation_overlap(p, 0.4, 0.0) == doctest::Approx(1.0));
    }
    SUBCASE("commuting family has no cross terms") {
        const InterpolationProblem p = diag_problem(0.0, 1.0, 0.25, 1.5);
        for (double delta : {0.0, 0.05, 0.2}) {
            CHECK(perturbation_overlap(p, 0.3, delta) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("third-order convergence to the exact overlap") {
        const InterpolationProblem p = make_random_instance(6, 0.1, 13);
        const double s = 0.37;
        auto gap_between = [&](double delta) {
            const double exact = overlap_bound_check(p, s, delta).overlap_sq;
            return std::abs(exact - perturbation_overlap(p, s, delta));
        };
        const double coarse = gap_between(1e-2);
        const double fine = gap_between(5e-3);
        CHECK(coarse > 1e-12);  // differences resolvable above noise
        CHECK(coarse / fine >= 4.0);
        // absolute agreement at small step
        const double exact = overlap_bound_check(p, s, 1e-3).overlap_sq;
        CHECK(std::abs(exact - perturbation_overlap(p, s, 1e-3)) < 1e-7);
    }
}

TEST_CASE("projector-pair generator") {
    const InterpolationProblem p1 = make_grover_instance(1, 3);
    CHECK(p1.dim() == 2);
    CHECK(p1.min_gap() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

    const InterpolationProblem p2 = make_grover_instance(2, 3);
    CHECK(p2.min_gap() == doctest::Approx(0.5).epsilon(1e-10));

    // h1's ground state is the seeded target basis state with eigenvalue 0.
    const SpectralData spec = eig_hermitian(p2.h1());
    CHECK(spec.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    double best = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) {
        best = std::max(best, std::abs(spec.eigenvectors[0].amplitude(i)));
    }
    CHECK(best == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("random instance generator") {
    const InterpolationProblem a = make_random_instance(2, 0.1, 42);
    CHECK(a.min_gap() >= 0.1);
    CHECK(a.gamma() == doctest::Approx(4.0).epsilon(1e-9));

    const InterpolationProblem b = make_random_instance(8, 0.05, 43);
    CHECK(b.min_gap() >= 0.05);

    const InterpolationProblem c = make_random_instance(8, 0.05, 43);
    CHECK((b.h0().entries() - c.h0().entries()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.h1().entries() - c.h1().entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("impossible gap floors exhaust the rejection budget") {
    CHECK_THROWS_AS((void)make_random_instance(2, 100.0, 1), std::runtime_error);
}

TEST_CASE("two-level family dials the gap directly") {
    for (double gap : {0.5, 0.1, 0.02}) {
        const InterpolationProblem p = make_two_level_instance(gap);
        CHECK(p.min_gap() == doctest::Approx(gap).epsilon(1e-10));
        CHECK(p.gamma() == doctest::Approx(std::sqrt(1.0 + gap * gap)).epsilon(1e-10));
    }
}

TEST_CASE("malformed instance documents are rejected") {
    CHECK_THROWS((void)problem_from_json("{not json"));
    CHECK_THROWS((void)problem_from_json("{\"dim\": 2}"));
}

TEST_CASE("instance serialization round trip is byte exact") {
    const InterpolationProblem p = make_random_instance(4, 0.05, 77);
    const std::string doc = problem_to_json(p);
    const InterpolationProblem q = problem_from_json(doc);
    CHECK(problem_to_json(q) == doc);
    CHECK((p.h0().entries() - q.h0().entries()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.h1().entries() - q.h1().entries()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.gamma() == q.gamma());
    CHECK(p.min_gap() == q.min_gap());
    CHECK(p.family() == q.family());
    CHECK(p.seed() == q.seed());
}
