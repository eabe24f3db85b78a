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

#include "qsep/oracle.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qsep/sampling.h"

namespace qsep::oracle {
namespace {

TEST(OracleConfig, Validation) {
    OracleConfig cfg;
    cfg.grid_size = 10;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.grid_size = 100;
    cfg.tolerance = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(LowestFeasibleQ2, OnConstraint) {
    double q2 = lowest_feasible_q2(0.7, 0.6, 0.3);
    EXPECT_NEAR(unitarity_residual({0.7, q2}, 0.6, 0.3), 0, 1e-12);
    EXPECT_TRUE(std::isnan(lowest_feasible_q2(0.01, 0.6, 0.3)));
}

TEST(OracleQmin, Examples) {
    OracleMinimum a = oracle_qmin(Priors(0.5), OverlapSpec(0.6, 0.3));
    EXPECT_NEAR(a.q.q, 3.0 / 7, 1e-9);
    EXPECT_NEAR(a.point.q1, a.point.q2, 1e-4);

    OracleMinimum b = oracle_qmin(Priors(0.1), OverlapSpec(0.6, 0));
    EXPECT_NEAR(b.q.q, 0.424, 1e-12);
    EXPECT_NEAR(b.point.q1, 1, 1e-12);
    EXPECT_NEAR(b.point.q2, 0.36, 1e-12);

    OracleMinimum c = oracle_qmin(Priors(0.3), OverlapSpec(0.6, 0.6));
    EXPECT_EQ(c.q.q, 0);
    EXPECT_EQ(c.point.q1, 0);
    EXPECT_EQ(c.point.q2, 0);
}

TEST(OracleQmin, IndependentReference) {
    // scipy bounded minimisation over the lower boundary
    EXPECT_NEAR(oracle_qmin(Priors(0.2), OverlapSpec(0.6, 0.3)).q.q, 0.38268136762515026, 1e-9);
    EXPECT_NEAR(oracle_qmin(Priors(0.35), OverlapSpec(0.7, 0.2)).q.q, 0.6081994245604829, 1e-9);
}

TEST(OracleMaxSeparation, Examples) {
    EXPECT_NEAR(oracle_max_separation(Priors(0.3), 0.4, {0.35}), 0.032, 2e-3);
    EXPECT_NEAR(oracle_max_separation(Priors(0.5), 0.6, {0.3}), 3.0 / 7, 1e-7);
    EXPECT_EQ(oracle_max_separation(Priors(0.3), 0.6, {0.6}), 0);
}

TEST(OracleQmin, Soundness) {
    UniformSource rng(23);
    int violations = 0;
    const double cases[][3] = {{0.3, 0.6, 0.3}, {0.1, 0.8, 0.5}, {0.45, 0.4, 0.1}, {0.2, 0.9, 0.85}};
    for (const auto &c : cases) {
        Priors pr(c[0]);
        const double s = c[1], beta = c[2];
        const double best = oracle_qmin(pr, OverlapSpec(s, beta)).q.q;
        const double lo = std::max(0.0, (s * s - beta * beta) / (1 - beta * beta));
        int drawn = 0;
        while (drawn < 25000) {
            double q1 = rng.uniform(lo, 1);
            Branch br = rng.next() < 0.5 ? Branch::Lower : Branch::Upper;
            double q2 = constraint_q2(q1, s, beta, br);
            if (!std::isfinite(q2)) continue;
            ++drawn;
            if (average_failure({q1, q2}, pr).q < best - 1e-12) ++violations;
        }
    }
    EXPECT_EQ(violations, 0);
}

}  // namespace
}  // namespace qsep::oracle
