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

#include <fpqsim/fpqs.hpp>

using namespace fpqsim;

namespace {

// Independent oracle: the driver operator built by the literal matrix
// recursion W(n+1) = W(n) R_src W(n)^dag R_tgt W(n), W(0) = I.
Matrix dense_driver(int level, const State& source, const State& target) {
    const Matrix r_src = selective_rotation(source, kFixedPointAngle).entries();
    const Matrix r_tgt = selective_rotation(target, kFixedPointAngle).entries();
    Matrix w = Matrix::Identity(source.dim(), source.dim());
    for (int n = 0; n < level; ++n) {
        w = w * r_src * w.adjoint() * r_tgt * w;
    }
    return w;
}

}  // namespace

TEST_CASE("selective rotation forms") {
    RandomStream rng(2);
    SUBCASE("zero angle is the identity") {
        const State axis = State::random(5, rng);
        const UnitaryOp r = selective_rotation(axis, 0.0);
        CHECK((r.entries() - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("basis-aligned axis is diagonal") {
        const UnitaryOp r = selective_rotation(State::basis(4, 0), kFixedPointAngle);
        CHECK(std::abs(r.entries()(0, 0) - std::polar(1.0, kFixedPointAngle)) < 1e-12);
        for (Eigen::Index i = 1; i < 4; ++i) {
            CHECK(std::abs(r.entries()(i, i) - Complex{1.0, 0.0}) < 1e-12);
        }
    }
    SUBCASE("rotation times its adjoint is the identity") {
        const State axis = State::random(6, rng);
        const Matrix prod = selective_rotation(axis, kFixedPointAngle).entries() *
                            selective_rotation(axis, kFixedPointAngle, true).entries();
        CHECK((prod - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("orthogonal complement is fixed") {
        const State axis = State::basis(3, 2);
        const UnitaryOp r = selective_rotation(axis, 1.1);
        const State other = State::basis(3, 0);
        CHECK((r.apply(other).amplitudes() - other.amplitudes()).norm() < 1e-12);
    }
}

TEST_CASE("single fixed-point step cubes the failure probability") {
    RandomStream rng(4);
    SUBCASE("aligned pair stays aligned") {
        const State a = State::random(4, rng);
        const State out = fpqs_step(a, a);
        CHECK(1.0 - fidelity(a, out) < 1e-14);
    }
    SUBCASE("half failure becomes an eighth") {
        auto [a, b] = random_pair_with_failure(6, 0.5, rng);
        const State out = fpqs_step(a, b);
        CHECK(std::abs((1.0 - fidelity(b, out)) - 0.125) < 1e-12);
    }
    SUBCASE("orthogonal pairs stay orthogonal") {
        auto [a, b] = random_pair_with_failure(4, 1.0, rng);
        const State out = fpqs_step(a, b);
        CHECK(1.0 - fidelity(b, out) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sequence construction") {
    CHECK(QuerySequence::build(0).query_count() == 0);
    CHECK(QuerySequence::build(0).to_token_string().empty());

    const QuerySequence s1 = QuerySequence::build(1);
    CHECK(s1.query_count() == 2);
    CHECK(s1.to_token_string() == "ba");  // target rotation applied first

    CHECK(QuerySequence::build(2).query_count() == 8);
    CHECK(QuerySequence::build(3).query_count() == 26);
    CHECK(QuerySequence::build(2).to_token_string() == "babABaba");
    CHECK(QuerySequence::build(3).to_token_string() ==
          "babABababABAbaBABababABaba");

    for (int n = 0; n <= 8; ++n) {
        std::int64_t expect = 1;
        for (int i = 0; i < n; ++i) expect *= 3;
        CHECK(QuerySequence::build(n).query_count() == expect - 1);
    }
    CHECK_THROWS_AS((void)QuerySequence::build(9), std::invalid_argument);
    CHECK_THROWS_AS((void)QuerySequence::build(-1), std::invalid_argument);

    const QuerySequence parsed = QuerySequence::from_token_string(2, "babABaba");
    CHECK(parsed.to_token_string() == QuerySequence::build(2).to_token_string());
    CHECK_THROWS_AS((void)QuerySequence::from_token_string(2, "ba"),
                    std::invalid_argument);
}

TEST_CASE("sequence application") {
    RandomStream rng(8);
    SUBCASE("level two drives the failure to the ninth power") {
        auto [a, b] = random_pair_with_failure(6, 0.3, rng);
        const State out = apply_sequence_exact(QuerySequence::build(2), a, b);
        CHECK(std::abs((1.0 - fidelity(b, out)) - std::pow(0.3, 9)) < 1e-9);
    }
    SUBCASE("level one equals the single step") {
        auto [a, b] = random_pair_with_failure(5, 0.4, rng);
        const State via_seq = apply_sequence_exact(QuerySequence::build(1), a, b);
        const State via_step = fpqs_step(a, b);
        CHECK((via_seq.amplitudes() - via_step.amplitudes()).norm() < 1e-12);
    }
    SUBCASE("level zero is a no-op") {
        const State a = State::random(4, rng);
        ExactRotationProvider provider(a, a);
        const SequenceResult res =
            apply_sequence(QuerySequence::build(0), a, provider, rng);
        CHECK(res.queries_used == 0);
        CHECK(res.ok);
        CHECK((res.state.amplitudes() - a.amplitudes()).norm() == 0.0);
    }
    SUBCASE("token walk matches the dense recursion") {
        for (int level = 1; level <= 4; ++level) {
            for (Eigen::Index dim : {2, 7, 16}) {
                auto [a, b] = random_pair_with_failure(dim, rng.uniform(), rng);
                const State via_tokens =
                    apply_sequence_exact(QuerySequence::build(level), a, b);
                Vector direct = dense_driver(level, a, b) * a.amplitudes();
                CHECK((via_tokens.amplitudes() - direct).norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("stratified fixed-point sweeps") {
    RandomStream rng(12);
    SUBCASE("level one, dense spread") {
        const auto reports = verify_fixed_point(4, 1, 100, rng);
        for (const FixedPointReport& r : reports) {
            CHECK(std::abs(r.observed_failure - r.predicted_failure) < 1e-10);
        }
    }
    SUBCASE("deep recursion at large failure") {
        auto [a, b] = random_pair_with_failure(4, 0.9, rng);
        const State out = apply_sequence_exact(QuerySequence::build(3), a, b);
        CHECK(std::abs((1.0 - fidelity(b, out)) - std::pow(0.9, 27)) < 1e-9);
    }
    SUBCASE("zero failure is preserved exactly") {
        auto [a, b] = random_pair_with_failure(4, 0.0, rng);
        const State out = apply_sequence_exact(QuerySequence::build(2), a, b);
        CHECK(1.0 - fidelity(b, out) < 1e-12);
    }
}

TEST_CASE("monotone convergence across levels") {
    RandomStream rng(14);
    for (double eps : {0.1, 0.5, 0.9, 0.99}) {
        auto [a, b] = random_pair_with_failure(5, eps, rng);
        double previous = eps;
        for (int level = 1; level <= 3; ++level) {
            const State out = apply_sequence_exact(QuerySequence::build(level), a, b);
            const double failure = 1.0 - fidelity(b, out);
            CHECK(failure < previous);
            previous = failure;
        }
    }
}

TEST_CASE("global phases do not change reported failures") {
    RandomStream rng(16);
    auto [a, b] = random_pair_with_failure(6, 0.37, rng);
    const State a2 = a.with_phase(1.9);
    const State b2 = b.with_phase(-0.7);
    const QuerySequence seq = QuerySequence::build(2);
    const double f1 = 1.0 - fidelity(b, apply_sequence_exact(seq, a, b));
    const double f2 = 1.0 - fidelity(b2, apply_sequence_exact(seq, a2, b2));
    CHECK(std::abs(f1 - f2) < 1e-12);
}
