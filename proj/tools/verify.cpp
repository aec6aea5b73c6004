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

#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include <fpqsim/evolution.hpp>

namespace fpqsim::bench {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

VerifyRow check(const std::string& id, const std::string& description, bool pass,
                const std::string& detail) {
    return VerifyRow{id, description, pass, detail};
}

std::vector<VerifyRow> suite_fpqs() {
    std::vector<VerifyRow> rows;
    RandomStream rng(19);

    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double eps = static_cast<double>(i) / 49.0;
            auto [a, b] = random_pair_with_failure(6, eps, rng);
            const double fail = 1.0 - fidelity(b, fpqs_step(a, b));
            worst = std::max(worst, std::abs(fail - eps * eps * eps));
        }
        rows.push_back(check("fixed-point-cubing",
                             "one driver step cubes the failure probability",
                             worst <= 1e-10, "max deviation " + fmt(worst)));
    }
    {
        double worst = 0.0;
        for (int level = 1; level <= 3; ++level) {
            for (double eps : {0.15, 0.5, 0.9}) {
                auto [a, b] = random_pair_with_failure(5, eps, rng);
                const State out =
                    apply_sequence_exact(QuerySequence::build(level), a, b);
                const double fail = 1.0 - fidelity(b, out);
                const double pred = std::pow(eps, std::pow(3.0, level));
                worst = std::max(worst, std::abs(fail - pred));
            }
        }
        rows.push_back(check("recursion-failure-power",
                             "levels 1..3 drive the failure to its 3^n power",
                             worst <= 1e-9, "max deviation " + fmt(worst)));
    }
    {
        const bool counts = QuerySequence::build(1).query_count() == 2 &&
                            QuerySequence::build(2).query_count() == 8 &&
                            QuerySequence::build(3).query_count() == 26;
        rows.push_back(check("query-counts", "token counts are 3^n - 1", counts,
                             "2, 8, 26"));
    }
    {
        // dense-recursion cross-check at level 3
        auto [a, b] = random_pair_with_failure(8, 0.4, rng);
        const Matrix r_src = selective_rotation(a, kFixedPointAngle).entries();
        const Matrix r_tgt = selective_rotation(b, kFixedPointAngle).entries();
        Matrix w = Matrix::Identity(8, 8);
        for (int n = 0; n < 3; ++n) {
            w = w * r_src * w.adjoint() * r_tgt * w;
        }
        const State via_tokens = apply_sequence_exact(QuerySequence::build(3), a, b);
        const double dev = (via_tokens.amplitudes() - Vector(w * a.amplitudes())).norm();
        rows.push_back(check("sequence-matches-dense-recursion",
                             "token walk equals the literal operator recursion",
                             dev <= 1e-10, "state deviation " + fmt(dev)));
    }
    {
        bool monotone = true;
        for (double eps : {0.2, 0.6, 0.95}) {
            auto [a, b] = random_pair_with_failure(4, eps, rng);
            double prev = eps;
            for (int level = 1; level <= 3; ++level) {
                const double fail =
                    1.0 - fidelity(b, apply_sequence_exact(QuerySequence::build(level),
                                                           a, b));
                monotone = monotone && fail < prev;
                prev = fail;
            }
        }
        rows.push_back(check("monotone-convergence",
                             "failure decreases strictly with the recursion level",
                             monotone, "levels 1..3"));
    }
    return rows;
}

std::vector<VerifyRow> suite_pea() {
    std::vector<VerifyRow> rows;
    RandomStream rng(23);
    {
        const UnitaryOp f = qft(4);
        const double dev =
            (f.entries().adjoint() * f.entries() - Matrix::Identity(16, 16))
                .cwiseAbs()
                .maxCoeff();
        rows.push_back(check("fourier-unitarity", "dense transform is unitary",
                             dev <= 1e-12, "max residue " + fmt(dev)));
    }
    {
        bool ok = true;
        double worst_margin = 1.0;
        for (int l : {6, 8, 10}) {
            for (int trial = 0; trial < 60; ++trial) {
                const double theta =
                    rng.uniform() * static_cast<double>(Eigen::Index{1} << l);
                for (int c = 2; c <= 8; ++c) {
                    const double p = response_window_probability(theta, l, c);
                    const double bound = 1.0 - 0.5 / (c - 1.0);
                    ok = ok && p >= bound;
                    worst_margin = std::min(worst_margin, p - bound);
                }
            }
        }
        rows.push_back(check("response-tail-bound",
                             "window capture beats 1 - 1/(2(c-1)) for c in 2..8",
                             ok, "worst margin " + fmt(worst_margin)));
    }
    {
        const AncillaConfig cfg = AncillaConfig::with_time(5, 0.08);
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 3.0 / (32.0 * cfg.t) - 2.0;
        m(1, 1) = 9.0 / (32.0 * cfg.t) - 2.0;
        const PhaseEstimationOp pea(HermitianOp(m), cfg, 2.0);
        const State in = tensor(pea.spectrum().eigenvectors[0], State::uniform(32));
        const State out = pea.apply(in);
        const State expect = tensor(pea.spectrum().eigenvectors[0], State::basis(32, 3));
        const double overlap = std::abs(inner_product(expect, out));
        rows.push_back(check("integer-phase-exactness",
                             "integral eigenphases produce exact ancilla readings",
                             std::abs(overlap - 1.0) <= 1e-9,
                             "overlap " + fmt(overlap)));
    }
    return rows;
}

std::vector<VerifyRow> suite_boost() {
    std::vector<VerifyRow> rows;
    const MarkedSet marked = MarkedSet::from_bottom(3, 5, 4);
    {
        bool ok = true;
        double worst = 0.0;
        for (double eta : {0.02, 0.05, 0.1}) {
            Eigen::VectorXd gamma(2);
            gamma << 1.0 - eta, 0.0;
            const UnitaryOp b = make_synthetic_discriminator(gamma, marked);
            auto bq = boosted_discriminator(std::make_shared<const DenseUnitary>(b),
                                            marked, 2, eta);
            const double g0 = marked_amplitude(*bq, marked, 2, 0);
            const double eps = 1.0 - gamma(0) * gamma(0);
            const double dev = std::abs(g0 * g0 - (1.0 - eps * eps * eps));
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-9;
        }
        rows.push_back(check("synthetic-inner-layer",
                             "first layer follows the exact cube law on blocks",
                             ok, "max deviation " + fmt(worst)));
    }
    {
        bool ok = true;
        for (double eta : {0.05, 0.1}) {
            Eigen::VectorXd gamma(3);
            gamma << 1.0 - eta, eta, eta;
            const UnitaryOp b = make_synthetic_discriminator(gamma, marked);
            const UnitaryOp bqq =
                boosted_b2(boosted_b(b, marked, 2, eta), marked, 2, eta);
            const DenseUnitary dq(bqq);
            const double eta0_after = 1.0 - marked_amplitude(dq, marked, 3, 0);
            const double etaj_after = marked_amplitude(dq, marked, 3, 1);
            const double eta0_pred = 1.5 * std::pow(2.0 * eta, 3);
            const double etaj_pred = std::pow(std::sqrt(3.0) * eta, 3);
            ok = ok && eta0_after <= 2 * eta0_pred && eta0_after >= 0.5 * eta0_pred &&
                 etaj_after <= 2 * etaj_pred && etaj_after >= 0.5 * etaj_pred;
        }
        rows.push_back(check("synthetic-outer-layer",
                             "second layer shrinks both error components as predicted",
                             ok, "eta in {0.05, 0.1}, q = q' = 2"));
    }
    {
        const bool ok =
            pea_runs_per_selective(OracleMode::kPea, std::nullopt) == 2 &&
            pea_runs_per_selective(OracleMode::kPeaBoosted, BoostPair{2, 2}) == 16;
        rows.push_back(check("model-cost-charges",
                             "selective transformations charge 2 and 4qq' passes",
                             ok, "2 and 16"));
    }
    return rows;
}

std::vector<VerifyRow> suite_bounds() {
    std::vector<VerifyRow> rows;
    RandomStream rng(29);
    {
        bool ok = true;
        const InterpolationProblem grover = make_grover_instance(2, 7);
        const InterpolationProblem random = make_random_instance(6, 0.1, 31);
        for (const InterpolationProblem* p : {&grover, &random}) {
            const double max_step = p->min_gap() / (2.0 * p->gamma());
            for (int i = 0; i < 60; ++i) {
                const double delta = rng.uniform() * max_step;
                const double s = rng.uniform() * (1.0 - delta);
                ok = ok && overlap_bound_check(*p, s, delta).holds;
            }
        }
        rows.push_back(check("ground-overlap-bound",
                             "successive ground overlaps beat 1 - (d*Gamma/g)^2",
                             ok, "120 sampled (s, delta) pairs"));
    }
    {
        bool ok0 = true, okj = true;
        double worst0 = 0.0, worstj = 0.0;
        for (int i = 0; i < 12; ++i) {
            const InterpolationProblem p = make_random_instance(3, 0.5, 200 + i);
            const AncillaConfig cfg = AncillaConfig::for_problem(p, 9);
            if (cfg.separation(p.min_gap()) < AncillaConfig::kDefaultMinSeparation) {
                continue;
            }
            const double s = rng.uniform();
            const PhaseEstimationOp pea(interpolate(p, s), cfg, p.gamma());
            const MarkedSet marked = MarkedSet::centered(
                pea.anchor_of(0), cfg.marked_width(p.min_gap()), cfg.l);
            const ApproxQuality q = measure_quality(pea, marked, kFixedPointAngle);
            const EtaBounds b = eta_bounds(cfg, p.min_gap());
            ok0 = ok0 && q.eta0 <= b.eta0;
            okj = okj && q.eta_excited_max <= b.eta_excited;
            worst0 = std::max(worst0, q.eta0 / b.eta0);
            worstj = std::max(worstj, q.eta_excited_max / b.eta_excited);
        }
        rows.push_back(check("discriminator-eta-ground",
                             "measured ground leakage under 1/(2^(l+1) g t)", ok0,
                             "worst ratio " + fmt(worst0)));
        rows.push_back(check("discriminator-eta-excited",
                             "measured excited capture under 1/sqrt(2^l g t)", okj,
                             "worst ratio " + fmt(worstj)));
    }
    return rows;
}

}  // namespace

std::vector<VerifyRow> run_verify_suite(const std::string& suite) {
    if (suite == "fpqs") {
        return suite_fpqs();
    }
    if (suite == "pea") {
        return suite_pea();
    }
    if (suite == "boost") {
        return suite_boost();
    }
    if (suite == "bounds") {
        return suite_bounds();
    }
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
}

std::string verify_rows_to_json(const std::string& suite,
                                const std::vector<VerifyRow>& rows) {
    nlohmann::json doc;
    doc["suite"] = suite;
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const VerifyRow& r : rows) {
        arr.push_back({{"id", r.id},
                       {"description", r.description},
                       {"pass", r.pass},
                       {"detail", r.detail}});
        all = all && r.pass;
    }
    doc["rows"] = arr;
    doc["all_pass"] = all;
    return doc.dump();
}

}  // namespace fpqsim::bench
