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

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsep {

namespace {

void require_nondegenerate_priors(const Priors &pr) {
    if (std::abs(pr.delta()) >= 1) {
        throw std::domain_error("iso-Q ellipse is undefined for degenerate priors (|eta2 - eta1| = 1)");
    }
}

void require_positive_final_overlap(double s_prime) {
    if (!(s_prime > 0)) {
        throw std::domain_error("unitarity parabola needs s' > 0; s' = 0 is the vertical segment u = s");
    }
}

}  // namespace

ConicPoint to_conic(const FailurePoint &pt) {
    return {std::sqrt(pt.q1 * pt.q2), (pt.q1 + pt.q2) / 2};
}

std::pair<FailurePoint, FailurePoint> from_conic(const ConicPoint &cp) {
    if (cp.v < cp.u - kFeasibilityTol || cp.u < 0) {
        throw std::domain_error("conic point below the envelope v = u has no real preimage");
    }
    double half_gap = std::sqrt(std::max(0.0, (cp.v - cp.u) * (cp.v + cp.u)));
    FailurePoint hi{cp.v + half_gap, cp.v - half_gap};
    return {hi, hi.swapped()};
}

double parabola_v(double u, double s, double s_prime) {
    require_positive_final_overlap(s_prime);
    double d = u - s;
    return parabola_envelope_v(u) - d * d / (2 * s_prime * s_prime);
}

VerticalSegment degenerate_parabola(double s) { return {s, parabola_envelope_v(s)}; }

HorizontalSegment degenerate_ellipse(FailureBudget q) { return {q.q, q.q}; }

ConicPoint ellipse_point(double theta, FailureBudget q, const Priors &pr) {
    require_nondegenerate_priors(pr);
    const double delta = pr.delta();
    if (delta == 0) {
        return {q.q * std::cos(theta), q.q};
    }
    const double w = 1 - delta * delta;
    return {q.q * std::cos(theta) / std::sqrt(w), q.q / w + q.q * delta * std::sin(theta) / w};
}

ConicSlopes conic_slopes(double theta, FailureBudget q, const Priors &pr, double u, double s, double s_prime) {
    require_nondegenerate_priors(pr);
    require_positive_final_overlap(s_prime);
    (void)q;
    const double delta = pr.delta();
    ConicSlopes out;
    double sn = std::sin(theta);
    double cs = std::cos(theta);
    if (delta == 0) {
        out.ellipse = 0;
    } else if (sn == 0) {
        out.ellipse = std::copysign(std::numeric_limits<double>::infinity(), -delta * cs);
    } else {
        out.ellipse = -delta * (cs / sn) / std::sqrt(1 - delta * delta);
    }
    out.parabola = u - (u - s) / (s_prime * s_prime);
    return out;
}

TangencyResiduals tangency_residuals(double theta, FailureBudget q, const Priors &pr, double s, double s_prime) {
    require_nondegenerate_priors(pr);
    require_positive_final_overlap(s_prime);
    ConicPoint e = ellipse_point(theta, q, pr);
    ConicSlopes slopes = conic_slopes(theta, q, pr, e.u, s, s_prime);
    return {e.v - parabola_v(e.u, s, s_prime), slopes.ellipse - slopes.parabola};
}

}  // namespace qsep
