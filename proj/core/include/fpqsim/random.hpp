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

#include <complex>
#include <cstdint>
#include <random>

namespace fpqsim {

/**
 * Seedable deterministic random stream.
 *
 * Every stochastic operation in the library takes one of these explicitly.
 * The engine is mt19937_64 and the bit-to-double mappings are fixed here
 * rather than delegated to std:: distributions, so a given seed produces the
 * same draws on every platform and standard library.
 */
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection sampling, bias-free.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal deviate (polar method, no cached spare).
    double normal();

    /// Complex deviate with independent N(0, 1/2) parts, so E|z|^2 = 1.
    std::complex<double> normal_complex();

  private:
    std::mt19937_64 engine_;
};

}  // namespace fpqsim
