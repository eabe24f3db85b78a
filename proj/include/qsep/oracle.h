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

#ifndef QSEP_ORACLE_H
#define QSEP_ORACLE_H

#include "qsep/core.h"

// Brute-force reference solutions. Nothing here uses the curve parametrisation,
// the conic geometry or the shared root finder, so the closed-form solvers can
// be checked against it.
namespace qsep::oracle {

struct OracleConfig {
    int grid_size = 4096;
    int refine_iters = 60;
    double tolerance = 1e-8;

    void validate() const;
};

struct OracleMinimum {
    FailureBudget q;
    FailurePoint point;
};

/// Smallest q2 with (q1, q2) feasible, by bisection below the peak of the
/// constraint in q2. NaN when no q2 is feasible at this q1.
double lowest_feasible_q2(double q1, double s, double beta);

/// Minimises eta1 q1 + eta2 q2 over the feasible set: a q1 grid over its whole
/// projection, each q1 paired with its lowest feasible q2, then golden-section
/// refinement around the best cell. The endpoints (1, s^2), (s^2, 1) and the
/// origin (when feasible) are always candidates.
OracleMinimum oracle_qmin(const Priors &pr, const OverlapSpec &ov, const OracleConfig &cfg = {});

/// Smallest s' in [0, s] with oracle_qmin(s, s') <= q_max, by bisection in s'.
double oracle_max_separation(const Priors &pr, double s, FailureBudget q_max, const OracleConfig &cfg = {});

}  // namespace qsep::oracle

#endif
