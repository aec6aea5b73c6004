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

#include <benchmark/benchmark.h>

#include <fpqsim/evolution.hpp>

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

void BM_EigHermitian(benchmark::State& state) {
    RandomStream rng(1);
    const HermitianOp h = random_hermitian(state.range(0), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_hermitian(h));
    }
}
BENCHMARK(BM_EigHermitian)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_EvolveUnitary(benchmark::State& state) {
    RandomStream rng(2);
    const HermitianOp h = random_hermitian(state.range(0), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_unitary(h, 0.1));
    }
}
BENCHMARK(BM_EvolveUnitary)->Arg(8)->Arg(32);

void BM_SequenceApply(benchmark::State& state) {
    RandomStream rng(3);
    auto [source, target] = random_pair_with_failure(16, 0.3, rng);
    const QuerySequence seq = QuerySequence::build(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_sequence_exact(seq, source, target));
    }
}
BENCHMARK(BM_SequenceApply)->Arg(1)->Arg(3)->Arg(5);

void BM_PhaseEstimationApply(benchmark::State& state) {
    const int l = static_cast<int>(state.range(0));
    const InterpolationProblem p = make_random_instance(4, 0.5, 11);
    const AncillaConfig cfg = AncillaConfig::for_problem(p, l);
    const PhaseEstimationOp pea(interpolate(p, 0.4), cfg, p.gamma());
    RandomStream rng(4);
    Vector psi = State::random(pea.dim(), rng).amplitudes();
    for (auto _ : state) {
        pea.apply_inplace(psi, false);
        benchmark::DoNotOptimize(psi.data());
    }
}
BENCHMARK(BM_PhaseEstimationApply)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

void BM_MeasurementStep(benchmark::State& state) {
    const InterpolationProblem p = make_grover_instance(6, 7);  // dim 64
    const CompiledSchedule schedule(p, 32);
    EvolutionConfig config;
    config.steps = 32;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        RandomStream rng(seed++);
        benchmark::DoNotOptimize(fpqs_run(schedule, config, rng));
    }
}
BENCHMARK(BM_MeasurementStep);

void BM_BoostedSelective(benchmark::State& state) {
    const InterpolationProblem p = make_random_instance(4, 0.8, 321);
    const AncillaConfig cfg = AncillaConfig::for_problem(p, 10);
    CostLedger ledger;
    SelectiveOracle oracle =
        make_oracle(p, 0.25, 1.0 / 64.0, cfg, OracleMode::kPeaBoosted, BoostPair{2, 2},
                    512, &ledger);
    RandomStream rng(5);
    State psi = State::random(4, rng);
    for (auto _ : state) {
        auto out = oracle.apply_token(RotationToken::kSource, psi, rng);
        benchmark::DoNotOptimize(out.state);
    }
}
BENCHMARK(BM_BoostedSelective);

}  // namespace

BENCHMARK_MAIN();
