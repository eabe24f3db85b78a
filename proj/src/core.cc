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

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qsep {

namespace {

bool is_probability(double x) { return x >= 0 && x <= 1; }

std::string describe(const char *what, double value) {
    std::ostringstream out;
    out.precision(17);
    out << what << " = " << value;
    return out.str();
}

}  // namespace

double clamped_sqrt(double x) {
    if (x >= 0) {
        return std::sqrt(x);
    }
    if (x >= -kSqrtClamp) {
        return 0;
    }
    throw NumericError(describe("negative square-root argument", x));
}

Priors::Priors(double eta1) : Priors(eta1, 1 - eta1) {}

Priors::Priors(double eta1, double eta2) : eta1_(eta1), eta2_(eta2) {
    if (!is_probability(eta1) || !is_probability(eta2)) {
        throw std::invalid_argument("priors must lie in [0, 1]");
    }
    if (std::abs(eta1 + eta2 - 1) > 1e-12) {
        throw std::invalid_argument("priors must sum to 1");
    }
}

OverlapSpec::OverlapSpec(double s, double s_prime, double kappa) : s_(s), s_prime_(s_prime), kappa_(kappa) {
    if (!is_probability(s)) {
        throw std::invalid_argument(describe("initial overlap outside [0, 1]: s", s));
    }
    if (!(s_prime >= 0 && s_prime <= s)) {
        throw std::invalid_argument(describe("final overlap outside [0, s]: s'", s_prime));
    }
    if (!is_probability(kappa)) {
        throw std::invalid_argument(describe("flag overlap outside [0, 1]: kappa", kappa));
    }
}

FailureBudget FailureBudget::checked(double q) {
    if (!is_probability(q)) {
        throw std::invalid_argument(describe("failure probability outside [0, 1]: Q", q));
    }
    return {q};
}

FailureBudget average_failure(const FailurePoint &pt, const Priors &pr) {
    return {pr.eta1() * pt.q1 + pr.eta2() * pt.q2};
}

double unitarity_residual(const FailurePoint &pt, double s, double beta) {
    return clamped_sqrt(pt.p1() * pt.p2()) * beta + clamped_sqrt(pt.q1 * pt.q2) - s;
}

double unitarity_residual(const FailurePoint &pt, const OverlapSpec &ov) {
    return unitarity_residual(pt, ov.s(), ov.beta());
}

bool in_feasible_set(const FailurePoint &pt, double s, double beta) {
    return unitarity_residual(pt, s, beta) >= -kFeasibilityTol;
}

bool in_feasible_set(const FailurePoint &pt, const OverlapSpec &ov) {
    return in_feasible_set(pt, ov.s(), ov.beta());
}

double constraint_q2(double q1, double s, double beta, Branch branch) {
    // With q2 = sin^2(phi) the constraint reads a cos(phi) + b sin(phi) = s.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double a = beta * clamped_sqrt(1 - q1);
    double b = clamped_sqrt(q1);
    double r = std::hypot(a, b);
    if (r < s || r == 0) {
        return nan;
    }
    double phi0 = std::atan2(b, a);
    double spread = std::acos(std::min(1.0, s / r));
    double phi = branch == Branch::Lower ? phi0 - spread : phi0 + spread;
    if (phi < -1e-15 || phi > std::numbers::pi / 2 + 1e-15) {
        return nan;
    }
    double sn = std::sin(phi);
    return std::min(1.0, sn * sn);
}

EndpointTangencyReport endpoint_tangency_check(const OverlapSpec &ov, double offset, double threshold) {
    if (ov.beta() <= 0) {
        throw std::invalid_argument("endpoint tangency requires beta > 0; at beta = 0 the curve is a hyperbola arc");
    }
    if (!(offset > 0 && offset < 0.5)) {
        throw std::invalid_argument(describe("offset must lie in (0, 1/2)", offset));
    }
    const double s = ov.s();
    const double beta = ov.beta();
    const double h = offset / 4;

    auto lower = [&](double q1) {
        double q2 = constraint_q2(q1, s, beta, Branch::Lower);
        if (std::isnan(q2)) {
            throw NumericError(describe("no lower-branch point at q1", q1));
        }
        return q2;
    };

    EndpointTangencyReport report;
    report.offset = offset;
    double x = 1 - offset;
    report.slope_near_lower_endpoint = (lower(x + h) - lower(x - h)) / (2 * h);
    // The curve is symmetric under q1 <-> q2, so the upper branch near (s^2, 1)
    // is the lower branch with the axes exchanged.
    double dq1_dq2 = (lower(x + h) - lower(x - h)) / (2 * h);
    report.slope_near_upper_endpoint = 1 / dq1_dq2;
    report.vertical_at_lower = std::abs(report.slope_near_lower_endpoint) > threshold;
    report.horizontal_at_upper = std::abs(report.slope_near_upper_endpoint) < 1 / threshold;
    return report;
}

}  // namespace qsep
