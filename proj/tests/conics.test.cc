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

#include "qsep/conics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "qsep/sampling.h"
#include "qsep/solvers.h"

namespace qsep {
namespace {

TEST(ToConic, Examples) {
    ConicPoint a = to_conic({0.25, 0.25});
    EXPECT_DOUBLE_EQ(a.u, 0.25);
    EXPECT_DOUBLE_EQ(a.v, 0.25);

    const double s = 0.6;
    ConicPoint b = to_conic({1, s * s});
    EXPECT_NEAR(b.u, s, 1e-15);
    EXPECT_NEAR(b.v, parabola_envelope_v(s), 1e-15);

    ConicPoint c = to_conic({0.3, 0.5});
    EXPECT_NEAR(c.u, std::sqrt(0.15), 1e-15);
    EXPECT_NEAR(c.v, 0.4, 1e-15);
}

TEST(FromConic, Examples) {
    auto [a, b] = from_conic({0.25, 0.25});
    EXPECT_NEAR(a.q1, 0.25, 1e-12);
    EXPECT_NEAR(a.q2, 0.25, 1e-12);
    EXPECT_NEAR(b.q1, 0.25, 1e-12);

    auto [c, d] = from_conic(to_conic({0.3, 0.5}));
    EXPECT_NEAR(c.q1, 0.5, 1e-12);
    EXPECT_NEAR(c.q2, 0.3, 1e-12);
    EXPECT_NEAR(d.q1, 0.3, 1e-12);

    auto [e, f] = from_conic({0.6, 0.68});
    EXPECT_NEAR(e.q1, 1, 1e-12);
    EXPECT_NEAR(e.q2, 0.36, 1e-12);

    EXPECT_THROW(from_conic({0.5, 0.4}), std::domain_error);
}

TEST(Parabola, Examples) {
    EXPECT_NEAR(parabola_v(0.6, 0.6, 0.3), parabola_envelope_v(0.6), 1e-15);
    EXPECT_NEAR(parabola_v(0, 0.4, 0.4), 0, 1e-15);
    EXPECT_THROW(parabola_v(0.3, 0.6, 0), std::domain_error);
}

TEST(Parabola, ContainsUnitarityCurve) {
    const double s = 0.7, sp = 0.35;
    CurveRange r = curve_range(s, sp);
    for (int k = 0; k <= 20; ++k) {
        double t = r.t_minus1 + (r.t0 - r.t_minus1) * k / 20;
        ConicPoint c = to_conic(lower_half_point(t, s, sp));
        EXPECT_NEAR(c.v, parabola_v(c.u, s, sp), 1e-12) << t;
    }
}

TEST(Parabola, EnvelopeAndThinning) {
    for (double s : {0.2, 0.5, 0.9}) {
        for (int k = 0; k <= 100; ++k) {
            double u = k / 100.0;
            double prev = parabola_envelope_v(u);
            for (double sp : {0.9 * s, 0.5 * s, 0.1 * s, 1e-3 * s}) {
                double v = parabola_v(u, s, sp);
                EXPECT_LE(v, prev + 1e-15);
                if (std::abs(u - s) > 1e-9) EXPECT_LT(v, prev);
                prev = v;
            }
        }
    }
}

TEST(Degenerations, Limits) {
    const double s = 0.5;
    VerticalSegment seg = degenerate_parabola(s);
    EXPECT_DOUBLE_EQ(seg.u, s);
    EXPECT_DOUBLE_EQ(seg.v_max, parabola_envelope_v(s));
    // near s' = 0 only u close to s keeps v >= 0
    EXPECT_LT(parabola_v(s + 1e-3, s, 1e-6), 0);
    EXPECT_NEAR(parabola_v(s, s, 1e-6), seg.v_max, 1e-15);

    const double q = 0.3;
    HorizontalSegment h = degenerate_ellipse({q});
    EXPECT_DOUBLE_EQ(h.v, q);
    EXPECT_DOUBLE_EQ(h.u_max, q);
    Priors almost_equal(0.5 - 5e-7);
    for (double th : {-1.2, -0.3, 0.0, 0.7}) {
        ConicPoint c = ellipse_point(th, {q}, almost_equal);
        EXPECT_NEAR(c.v, q, 1e-6);
        EXPECT_LE(c.u, q + 1e-9);
    }
}

TEST(Ellipse, Examples) {
    ConicPoint o = ellipse_point(0.4, {0}, Priors(0.3));
    EXPECT_EQ(o.u, 0);
    EXPECT_EQ(o.v, 0);
    ConicPoint e = ellipse_point(0, {0.3}, Priors(0.5));
    EXPECT_DOUBLE_EQ(e.u, 0.3);
    EXPECT_DOUBLE_EQ(e.v, 0.3);
    EXPECT_THROW(ellipse_point(0, {0.3}, Priors(0)), std::domain_error);
    EXPECT_THROW(ellipse_point(0, {0.3}, Priors(1)), std::domain_error);
}

TEST(Ellipse, EnvelopeTouchedOnce) {
    const Priors pr(0.2);
    const double q = 0.4;
    const int n = 20000;
    int runs = 0;
    bool inside = false;
    double best = 1;
    for (int k = 0; k <= n; ++k) {
        double th = -std::numbers::pi + 2 * std::numbers::pi * k / n;
        ConicPoint c = ellipse_point(th, {q}, pr);
        double gap = c.v - c.u;
        EXPECT_GE(gap, -1e-12);
        best = std::min(best, gap);
        bool near = gap < 1e-6;
        if (near && !inside) ++runs;
        inside = near;
    }
    EXPECT_NEAR(best, 0, 1e-7);
    EXPECT_EQ(runs, 1);
}

TEST(Slopes, Examples) {
    ConicSlopes sl = conic_slopes(std::numbers::pi / 2, {0.3}, Priors(0.2), 0.6, 0.6, 0.3);
    EXPECT_NEAR(sl.parabola, 0.6, 1e-15);
    EXPECT_NEAR(sl.ellipse, 0, 1e-15);
    ConicSlopes inf = conic_slopes(0, {0.3}, Priors(0.2), 0.5, 0.6, 0.3);
    EXPECT_TRUE(std::isinf(inf.ellipse));
}

TEST(Tangency, ResidualsVanishAtSolution) {
    const Priors pr(0.3);
    const double s = 0.4;
    const FailureBudget q{0.35};
    MaxSeparation ms = max_separation(pr, s, q);
    TangencyResiduals r = tangency_residuals(ms.theta, q, pr, s, ms.s_prime);
    EXPECT_LE(std::abs(r.membership), 1e-9);
    EXPECT_LE(std::abs(r.slope), 1e-9);

    ConicSlopes sl = conic_slopes(ms.theta, q, pr, ellipse_point(ms.theta, q, pr).u, s, ms.s_prime);
    EXPECT_NEAR(sl.ellipse, sl.parabola, 1e-9);

    FailurePoint pt = from_conic(ellipse_point(ms.theta, q, pr)).first;
    EXPECT_NEAR(average_failure(pt, pr).q, q.q, 1e-9);
    EXPECT_NEAR(unitarity_residual(pt, s, ms.s_prime), 0, 1e-9);

    TangencyResiduals off = tangency_residuals(ms.theta + 0.1, q, pr, s, ms.s_prime);
    EXPECT_GT(std::max(std::abs(off.membership), std::abs(off.slope)), 1e-4);
}

TEST(Tangency, UpperAngleBoundary) {
    const Priors pr(0.2);
    const FailureBudget q{0.3};
    AngleRange r = max_separation_angle_range(pr, q);
    double s = initial_overlap_at(r.hi, pr, q);
    double sp = separation_overlap_at(r.hi, pr, q);
    if (sp > 0) {
        TangencyResiduals res = tangency_residuals(r.hi, q, pr, s, sp);
        EXPECT_LE(std::abs(res.membership), 1e-9);
        EXPECT_LE(std::abs(res.slope), 1e-9);
    } else {
        EXPECT_NEAR(sp, 0, 1e-12);
    }
}

TEST(Properties, AmGm) {
    UniformSource rng(3);
    for (int i = 0; i < 10000; ++i) {
        FailurePoint p{rng.next(), rng.next()};
        ConicPoint c = to_conic(p);
        EXPECT_LE(c.u, c.v + 1e-15);
        auto [a, b] = from_conic(c);
        EXPECT_NEAR(std::max(p.q1, p.q2), a.q1, 1e-12);
        EXPECT_NEAR(std::min(p.q1, p.q2), a.q2, 1e-12);
        EXPECT_NEAR(a.q1, b.q2, 1e-15);
    }
    ConicPoint eq = to_conic({0.37, 0.37});
    EXPECT_NEAR(eq.u, eq.v, 1e-12);
}

}  // namespace
}  // namespace qsep
