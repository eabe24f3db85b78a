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

#include "qsep/core.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qsep/sampling.h"

namespace qsep {
namespace {

TEST(Priors, Validation) {
    EXPECT_THROW(Priors(-0.1), std::invalid_argument);
    EXPECT_THROW(Priors(1.1), std::invalid_argument);
    EXPECT_THROW(Priors(0.3, 0.6), std::invalid_argument);
    EXPECT_NO_THROW(Priors(0.3, 0.7));
    Priors p(0.8);
    EXPECT_TRUE(p.needs_swap());
    EXPECT_NEAR(p.normalized().eta1(), 0.2, 1e-15);
    EXPECT_NEAR(p.delta(), -0.6, 1e-15);
}

TEST(OverlapSpec, Validation) {
    EXPECT_THROW(OverlapSpec(0.5, 0.6), std::invalid_argument);
    EXPECT_THROW(OverlapSpec(1.2, 0.6), std::invalid_argument);
    EXPECT_THROW(OverlapSpec(0.5, -0.1), std::invalid_argument);
    EXPECT_DOUBLE_EQ(OverlapSpec(0.6, 0.5, 0.5).beta(), 0.25);
}

TEST(AverageFailure, Examples) {
    EXPECT_EQ(average_failure({0, 0}, Priors(0.3)).q, 0);
    EXPECT_NEAR(average_failure({1, 1}, Priors(0.3)).q, 1, 1e-15);
    // 0.25 * 0.3 + 0.75 * 0.5
    EXPECT_NEAR(average_failure({0.3, 0.5}, Priors(0.25)).q, 0.45, 1e-15);
}

TEST(UnitarityResidual, Endpoints) {
    for (double s : {0.1, 0.6, 0.95}) {
        for (double beta : {0.0, s / 3, s}) {
            EXPECT_NEAR(unitarity_residual({1, s * s}, s, beta), 0, 1e-12);
            EXPECT_NEAR(unitarity_residual({s * s, 1}, s, beta), 0, 1e-12);
        }
    }
}

TEST(UnitarityResidual, DiagonalRoot) {
    // (1 - q) 0.45 + q = 0.6
    const double q = 0.15 / 0.55;
    EXPECT_NEAR(unitarity_residual({q, q}, 0.6, 0.45), 0, 1e-12);
}

TEST(FeasibleSet, Examples) {
    EXPECT_TRUE(in_feasible_set({1, 1}, 0.6, 0.3));
    EXPECT_FALSE(in_feasible_set({0, 0}, 0.6, 0.3));
    EXPECT_TRUE(in_feasible_set({0, 0}, 0.6, 0.6));
}

TEST(FeasibleSet, ConvexCombination) {
    const double s = 0.6, beta = 0.3;
    FailurePoint a{1, s * s}, b{s * s, 1};
    for (double lam : {0.1, 0.5, 0.9}) {
        FailurePoint c{lam * a.q1 + (1 - lam) * b.q1, lam * a.q2 + (1 - lam) * b.q2};
        EXPECT_TRUE(in_feasible_set(c, s, beta));
    }
}

TEST(ConstraintQ2, OnCurveAndHyperbola) {
    const double s = 0.6;
    for (double q1 : {0.4, 0.6, 0.9, 1.0}) {
        double q2 = constraint_q2(q1, s, 0.0);
        EXPECT_NEAR(q1 * q2, s * s, 1e-12) << q1;
    }
    for (double q1 : {0.3, 0.5, 0.8}) {
        double q2 = constraint_q2(q1, s, 0.3);
        ASSERT_TRUE(std::isfinite(q2));
        EXPECT_NEAR(unitarity_residual({q1, q2}, s, 0.3), 0, 1e-12);
    }
    // below q1 = s^2 the curve bends back and has a second root
    double lo = constraint_q2(0.3, s, 0.3, Branch::Lower);
    double hi = constraint_q2(0.3, s, 0.3, Branch::Upper);
    EXPECT_LT(lo, hi);
    EXPECT_NEAR(unitarity_residual({0.3, hi}, s, 0.3), 0, 1e-12);
    EXPECT_TRUE(std::isnan(constraint_q2(0.5, s, 0.3, Branch::Upper)));
    EXPECT_TRUE(std::isnan(constraint_q2(0.01, s, 0.3)));
}

TEST(EndpointTangency, Examples) {
    auto r = endpoint_tangency_check(OverlapSpec(0.6, 0.3));
    EXPECT_GT(std::abs(r.slope_near_lower_endpoint), 1e2);
    EXPECT_TRUE(r.vertical_at_lower);
    EXPECT_TRUE(r.horizontal_at_upper);
    auto r2 = endpoint_tangency_check(OverlapSpec(0.6, 0.59));
    EXPECT_TRUE(r2.vertical_at_lower);
    EXPECT_TRUE(r2.horizontal_at_upper);
    EXPECT_THROW(endpoint_tangency_check(OverlapSpec(0.6, 0)), std::invalid_argument);
}

TEST(EndpointTangency, HyperbolaSlopeIsFinite) {
    // q2 = s^2 / q1 has slope -s^2 at q1 = 1
    const double s = 0.6, h = 1e-6;
    double slope = (s * s / 1.0 - s * s / (1 - h)) / h;
    EXPECT_NEAR(slope, -s * s, 1e-5);
}

TEST(Properties, SwapSymmetry) {
    UniformSource rng(7);
    for (int i = 0; i < 10000; ++i) {
        FailurePoint p{rng.next(), rng.next()};
        double s = rng.next(), beta = s * rng.next();
        EXPECT_EQ(unitarity_residual(p, s, beta), unitarity_residual(p.swapped(), s, beta));
    }
}

TEST(Properties, Nesting) {
    UniformSource rng(11);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        FailurePoint p{rng.next(), rng.next()};
        double s = rng.next();
        double b1 = s * rng.next(), b2 = b1 + (s - b1) * rng.next();
        if (in_feasible_set(p, s, b1) && !in_feasible_set(p, s, b2)) ++violations;
    }
    EXPECT_EQ(violations, 0);
}

TEST(Properties, Convexity) {
    UniformSource rng(13);
    int violations = 0, trials = 0;
    for (double s : {0.3, 0.6, 0.9}) {
        for (double frac : {0.0, 0.5, 1.0}) {
            const double beta = s * frac;
            for (int i = 0; i < 10000; ++i) {
                FailurePoint a{rng.next(), rng.next()}, b{rng.next(), rng.next()};
                if (!in_feasible_set(a, s, beta) || !in_feasible_set(b, s, beta)) continue;
                double lam = rng.next();
                FailurePoint c{lam * a.q1 + (1 - lam) * b.q1, lam * a.q2 + (1 - lam) * b.q2};
                ++trials;
                if (!in_feasible_set(c, s, beta)) ++violations;
            }
        }
    }
    EXPECT_GT(trials, 1000);
    EXPECT_EQ(violations, 0);
}

TEST(ClampedSqrt, Tolerance) {
    EXPECT_EQ(clamped_sqrt(-1e-15), 0);
    EXPECT_THROW(clamped_sqrt(-1e-10), NumericError);
    EXPECT_DOUBLE_EQ(clamped_sqrt(4), 2);
}

TEST(FailureBudget, Checked) {
    EXPECT_THROW(FailureBudget::checked(1.5), std::invalid_argument);
    EXPECT_DOUBLE_EQ(FailureBudget::checked(0.3).q, 0.3);
}

}  // namespace
}  // namespace qsep
