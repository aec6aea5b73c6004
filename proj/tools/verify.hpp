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

#include <string>
#include <vector>

namespace fpqsim::bench {

struct VerifyRow {
    std::string id;           ///< stable property identifier
    std::string description;  ///< what the row checks
    bool pass = false;
    std::string detail;       ///< measured numbers
};

/// Known suites: fpqs, pea, boost, bounds. Fixed seeds, deterministic rows.
/// Throws std::invalid_argument on an unknown suite name.
std::vector<VerifyRow> run_verify_suite(const std::string& suite);

std::string verify_rows_to_json(const std::string& suite,
                                const std::vector<VerifyRow>& rows);

}  // namespace fpqsim::bench
