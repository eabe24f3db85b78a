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

#ifndef QSEP_SOLVERS_H
#define QSEP_SOLVERS_H

#include <optional>
#include <vector>

#include "qsep/core.h"

// Optimal separation of two pure states.
//
// Three questions are answered, each by its own family of solutions:
//   * the minimum average failure Q_min for a fixed final overlap s'
//     (qmin_at, qmin_curve),
//   * the minimum final overlap s' for a failure budget Q_max
//     (max_separation, critical_overlap),
//   * the tradeoff curve s'(Q) at fixed initial overlap s (tradeoff_curve).
// Full separation (s' = 0) is unambiguous discrimination and has the closed
// form q_ud. Priors with eta1 > 1/2 are solved on the swapped problem and the
// resulting failure points are swapped back.
//
// Where the optimisation depends on the final overlap, it is through
// beta = s' * kappa only; OverlapSpec::beta() is used throughout.
namespace qsep {

inline constexpr int kDefaultSamples = 512;

// ---------------------------------------------------------------------------
// Unambiguous discrimination (s' = 0).

struct MinFailure {
    FailureBudget q;
    FailurePoint point;
    /// Curve parameter of the tangency point, NaN for closed-form solutions.
    double t = 0;
};

/// Minimum average failure for full separation, with the optimal point.
MinFailure unambiguous_discrimination(const Priors &pr, double s);

inline FailureBudget q_ud(const Priors &pr, double s) { return unambiguous_discrimination(pr, s).q; }

// ---------------------------------------------------------------------------
// Fixed final overlap.

/// Valid parameter interval [t_minus1, t0] of the lower half of the unitarity
/// curve: slope -1 on the diagonal and slope 0 at t0.
struct CurveRange {
    double t_minus1 = 0;
    double t0 = 0;
};

/// Requires 0 < s_prime < s.
CurveRange curve_range(double s, double s_prime);

/// Point of the lower half (q2 <= q1) of the unitarity curve for beta = s_prime.
/// Defined for t in [t_minus1, 1]; t = 1 is the endpoint (1, s^2).
FailurePoint lower_half_point(double t, double s, double s_prime);

/// lower_half_point restricted to the tangency range. Throws std::out_of_range
/// outside [t_minus1, t0].
FailurePoint curve_point(double t, const OverlapSpec &ov);

struct QminSample {
    double t = 0;
    double eta1 = 0;
    FailureBudget q_min;
    FailurePoint point;
    /// dq1/dt and dq2/dt; infinite at t_minus1.
    double dq1 = 0;
    double dq2 = 0;
};

/// The tangency data at curve parameter t: the prior for which the iso-Q line
/// touches the curve at that point and the corresponding Q_min.
QminSample qmin_sample(double t, double s, double s_prime);

/// Uniform sweep of t over [t_minus1, t0] (both ends included). eta1 runs from
/// 1/2 down to 0. Throws NumericError if eta1 fails to be monotone.
std::vector<QminSample> qmin_curve(const OverlapSpec &ov, int n_samples = kDefaultSamples);

/// Minimum average failure and the optimal point for the given priors.
MinFailure qmin_at(const Priors &pr, const OverlapSpec &ov);

// ---------------------------------------------------------------------------
// Failure budget: maximum separation.

struct AngleRange {
    double lo = 0;
    double hi = 0;
};

/// Final overlap along the optimal-tangency curve at polar angle theta (eta1 <= 1/2).
double separation_overlap_at(double theta, const Priors &pr, FailureBudget q);
/// Initial overlap along the same curve.
double initial_overlap_at(double theta, const Priors &pr, FailureBudget q);
/// [-asin(Delta), theta_max]; the low end gives s = s' = 1, the high end s' = 0.
AngleRange max_separation_angle_range(const Priors &pr, FailureBudget q);

struct MaxSeparation {
    double s_prime = 0;
    /// Tangency angle on the normalised (eta1 <= 1/2) problem. NaN when the
    /// answer comes from a closed form without an angle.
    double theta = 0;
    /// False when the budget exceeds q_ud and full separation is reached.
    bool budget_saturated = true;
};

/// Smallest final overlap attainable from s with average failure at most q_max.
MaxSeparation max_separation(const Priors &pr, double s, FailureBudget q_max);

/// Largest initial overlap that can still be fully separated within q_max.
double critical_overlap(const Priors &pr, FailureBudget q_max);

// ---------------------------------------------------------------------------
// Tradeoff at fixed initial overlap.

struct TradeoffSample {
    double theta = 0;
    double s = 0;
    double s_prime = 0;
    FailureBudget q;
};

/// [-atan(s Delta / sqrt(1 - Delta^2)), theta_max] for eta1 <= 1/2, 0 < Delta < 1.
AngleRange tradeoff_angle_range(const Priors &pr, double s);

/// Evaluates the tradeoff parametrisation at theta (eta1 <= 1/2, 0 < Delta < 1).
TradeoffSample tradeoff_point(double theta, const Priors &pr, double s);

/// Samples from (Q = 0, s' = s) to (Q = q_ud, s' = 0). Equal priors and
/// eta1 = 0 are swept in Q with their closed forms (theta reported as 0 and
/// -pi/2 respectively).
std::vector<TradeoffSample> tradeoff_curve(const Priors &pr, double s, int n_samples = kDefaultSamples);

/// The point of the tradeoff curve with average failure q (q <= q_ud).
TradeoffSample tradeoff_at(const Priors &pr, double s, FailureBudget q);

// ---------------------------------------------------------------------------
// Corollaries.

struct CloneBound {
    double s_prime_min = 0;
    /// Empty when full separation is affordable and any number of clones can be made.
    std::optional<int> n_max;
};

/// Maximum number of perfect clones from one copy within the budget q_max.
CloneBound max_clones(double s, FailureBudget q_max, const Priors &pr);

/// Right minus left one-sided second differences of Q_min(eta1) at eta_star,
/// with stencils {eta_star, eta_star + h, eta_star + 2h} and its mirror.
double phase_transition_probe(double s, double s_prime, double eta_star, double h);

}  // namespace qsep

#endif
