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

#ifndef QSEP_VERIFY_H
#define QSEP_VERIFY_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qsep/solvers.h"

// Self-check suite behind `qsep verify`. Each check reports the worst observed
// deviation against its tolerance (for counting checks, the violation count).
namespace qsep::verify {

struct CheckResult {
    std::string name;
    double worst = 0;
    double tolerance = 0;
    bool passed = false;
    std::string detail;
};

using MaxSeparationFn = std::function<MaxSeparation(const Priors &, double, FailureBudget)>;

struct VerifyOptions {
    std::uint64_t seed = 1;
    int random_trials = 10000;
    int round_trip_instances = 1000;
    int oracle_grid = 10;
    std::int64_t shots = 1000000;
    /// Solver under test for the round-trip check.
    MaxSeparationFn max_separation = qsep::max_separation;
};

CheckResult check_endpoint_identity();
CheckResult check_swap_symmetry(const VerifyOptions &opts);
CheckResult check_set_nesting(const VerifyOptions &opts);
CheckResult check_convexity(const VerifyOptions &opts);
CheckResult check_ud_closed_form();
CheckResult check_oracle_agreement(const VerifyOptions &opts);
CheckResult check_round_trip(const VerifyOptions &opts);
CheckResult check_conic_consistency(const VerifyOptions &opts);
CheckResult check_phase_transition();
CheckResult check_reference_separation();
CheckResult check_optics_exactness(const VerifyOptions &opts);
CheckResult check_optics_statistics(const VerifyOptions &opts);

std::vector<CheckResult> run_all(const VerifyOptions &opts);

/// Minimum of eta1 q1 + eta2 s^2 / q1 over q1 in [s^2, 1] by a dense grid and
/// golden-section refinement. Reference for the full-separation closed form.
double dense_hyperbola_minimum(double eta1, double s, int grid = 20001);

}  // namespace qsep::verify

#endif
