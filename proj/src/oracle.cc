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

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsep::oracle {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Candidate {
    double q = std::numeric_limits<double>::infinity();
    FailurePoint point;

    void offer(double value, FailurePoint pt) {
        if (value < q || (value == q && pt.q1 < point.q1)) {
            q = value;
            point = pt;
        }
    }
};

}  // namespace

void OracleConfig::validate() const {
    if (grid_size < 100) {
        throw std::invalid_argument("oracle grid_size must be at least 100");
    }
    if (refine_iters < 0) {
        throw std::invalid_argument("oracle refine_iters must be non-negative");
    }
    if (!(tolerance > 0)) {
        throw std::invalid_argument("oracle tolerance must be positive");
    }
}

double lowest_feasible_q2(double q1, double s, double beta) {
    const double p1 = 1 - q1;
    auto residual = [&](double q2) { return std::sqrt(p1 * (1 - q2)) * beta + std::sqrt(q1 * q2) - s; };
    if (residual(0) >= 0) {
        return 0;
    }
    // The residual is concave in q2 and peaks at q1 / (beta^2 p1 + q1).
    const double denom = beta * beta * p1 + q1;
    if (denom <= 0) {
        return kNaN;
    }
    double hi = q1 / denom;
    double f_hi = residual(hi);
    if (f_hi < 0) {
        return f_hi >= -kFeasibilityTol ? hi : kNaN;
    }
    double lo = 0;
    for (int i = 0; i < 200; ++i) {
        double mid = lo + (hi - lo) / 2;
        if (mid == lo || mid == hi) {
            break;
        }
        if (residual(mid) >= 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

OracleMinimum oracle_qmin(const Priors &pr, const OverlapSpec &ov, const OracleConfig &cfg) {
    cfg.validate();
    const double s = ov.s();
    const double beta = ov.beta();
    const double eta1 = pr.eta1();
    const double eta2 = pr.eta2();

    Candidate best;
    auto offer = [&](FailurePoint pt) {
        if (unitarity_residual(pt, s, beta) >= -kFeasibilityTol) {
            best.offer(eta1 * pt.q1 + eta2 * pt.q2, pt);
        }
    };
    offer({1, s * s});
    offer({s * s, 1});
    offer({0, 0});

    // Projection of the feasible set onto q1: the peak value of the residual
    // over q2 is sqrt(beta^2 p1 + q1) - s.
    double q1_lo = 0;
    if (beta < 1) {
        q1_lo = std::max(0.0, (s * s - beta * beta) / (1 - beta * beta));
    }
    const double span = 1 - q1_lo;

    auto value_at = [&](double q1) {
        double q2 = lowest_feasible_q2(q1, s, beta);
        if (std::isnan(q2)) {
            return std::numeric_limits<double>::infinity();
        }
        best.offer(eta1 * q1 + eta2 * q2, {q1, q2});
        return eta1 * q1 + eta2 * q2;
    };

    const int n = cfg.grid_size;
    int best_k = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        double q1 = k + 1 == n ? 1.0 : q1_lo + span * k / (n - 1);
        double v = value_at(q1);
        if (v < best_val) {
            best_val = v;
            best_k = k;
        }
    }

    // Golden-section search; the objective is convex along the lower boundary.
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = q1_lo + span * std::max(0, best_k - 1) / (n - 1);
    double b = q1_lo + span * std::min(n - 1, best_k + 1) / (n - 1);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = value_at(c);
    double fd = value_at(d);
    for (int i = 0; i < cfg.refine_iters && b - a > 1e-16; ++i) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = value_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = value_at(d);
        }
    }
    return {{best.q}, best.point};
}

double oracle_max_separation(const Priors &pr, double s, FailureBudget q_max, const OracleConfig &cfg) {
    cfg.validate();
    auto qmin = [&](double sp) { return oracle_qmin(pr, OverlapSpec(s, sp), cfg).q.q; };
    if (qmin(0) <= q_max.q) {
        return 0;
    }
    // Q_min decreases as s' grows, and reaches 0 at s' = s.
    double lo = 0;
    double hi = s;
    while (hi - lo > cfg.tolerance) {
        double mid = lo + (hi - lo) / 2;
        if (qmin(mid) <= q_max.q) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace qsep::oracle
