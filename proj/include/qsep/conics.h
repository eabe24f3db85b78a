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

#ifndef QSEP_CONICS_H
#define QSEP_CONICS_H

#include <utility>

#include "qsep/core.h"

// Geometry in the plane of u = sqrt(q1 q2) and v = (q1 + q2) / 2. The unitarity
// curves become parabolas and the iso-Q lines become ellipses. Their envelopes
// v = (1 + u^2) / 2 and v = u bound the region where optimal points live.
namespace qsep {

struct ConicPoint {
    double u = 0;
    double v = 0;
};

ConicPoint to_conic(const FailurePoint &pt);

/// Both preimages of a conic point; first has q1 >= q2, second is its mirror.
/// Throws std::domain_error when v < u.
std::pair<FailurePoint, FailurePoint> from_conic(const ConicPoint &cp);

/// The unitarity parabola v(u) for overlaps s and s' > 0.
/// s' = 0 throws std::domain_error: that curve is the vertical segment
/// described by `degenerate_parabola`.
double parabola_v(double u, double s, double s_prime);

/// Upper envelope of every unitarity parabola.
inline double parabola_envelope_v(double u) { return (1 + u * u) / 2; }

/// The s' = 0 unitarity "curve": the segment u = s, 0 <= v <= v_max.
struct VerticalSegment {
    double u = 0;
    double v_max = 0;
};
VerticalSegment degenerate_parabola(double s);

/// The equal-prior iso-Q "ellipse": the segment v = q, 0 <= u <= u_max.
struct HorizontalSegment {
    double v = 0;
    double u_max = 0;
};
HorizontalSegment degenerate_ellipse(FailureBudget q);

/// Point of the iso-Q ellipse at polar angle theta, measured from the ellipse
/// centre relative to the v = 0 axis. For equal priors this traces the
/// horizontal segment. Throws std::domain_error for |Delta| = 1.
ConicPoint ellipse_point(double theta, FailureBudget q, const Priors &pr);

/// dv/du of the ellipse at theta and of the parabola at u.
/// The ellipse slope is a signed infinity where sin(theta) = 0 and Delta != 0.
struct ConicSlopes {
    double ellipse = 0;
    double parabola = 0;
};
ConicSlopes conic_slopes(double theta, FailureBudget q, const Priors &pr, double u, double s, double s_prime);

/// Residuals of the tangency system: the ellipse point lies on the parabola,
/// and the two slopes agree. Both vanish at the optimal tangency.
struct TangencyResiduals {
    double membership = 0;
    double slope = 0;
};
TangencyResiduals tangency_residuals(double theta, FailureBudget q, const Priors &pr, double s, double s_prime);

}  // namespace qsep

#endif
