// Copyright 2026 The qsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSEP_SAMPLING_H
#define QSEP_SAMPLING_H

#include <cstdint>
#include <random>

namespace qsep {

/// Seeded uniform reals, identical on every standard library
/// (std::uniform_real_distribution is not).
class UniformSource {
   public:
    explicit UniformSource(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) { return lo + static_cast<int>(next() * (hi - lo + 1)); }

   private:
    std::mt19937_64 gen_;
};

}  // namespace qsep

#endif
