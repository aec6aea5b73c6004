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

#include <cstdint>

namespace fpqsim {

/**
 * Exact run-cost counters, the simulator's stand-in for physical running
 * time. Counters are plain integers: each run owns its ledger and parallel
 * sweeps merge per-run ledgers afterwards.
 *
 * Conventions:
 *  - every phase-estimation pass (forward or adjoint) is one `pea_runs`
 *    and charges 2^l `u_applications`;
 *  - a selective transformation realized through an unboosted discriminator
 *    charges 2 passes (one each way around the marked-phase kick);
 *  - a boosted selective transformation with parameters (q, q') charges
 *    4 q q' passes, the analytic worst case of the layered construction.
 */
struct CostLedger {
    std::int64_t u_applications = 0;
    std::int64_t oracle_queries = 0;
    std::int64_t measurements = 0;
    std::int64_t pea_runs = 0;
    std::int64_t restarts = 0;

    void charge_pea_runs(std::int64_t runs, int l) {
        pea_runs += runs;
        u_applications += runs * (std::int64_t{1} << l);
    }

    CostLedger& operator+=(const CostLedger& other) {
        u_applications += other.u_applications;
        oracle_queries += other.oracle_queries;
        measurements += other.measurements;
        pea_runs += other.pea_runs;
        restarts += other.restarts;
        return *this;
    }
};

}  // namespace fpqsim
