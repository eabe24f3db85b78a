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

#ifndef QSEP_CORE_H
#define QSEP_CORE_H

#include <stdexcept>
#include <string>

namespace qsep {

/// Absolute tolerance on the unitarity residual used for feasibility decisions.
inline constexpr double kFeasibilityTol = 1e-12;

/// Negative square-root arguments down to this value are treated as rounding noise.
inline constexpr double kSqrtClamp = 1e-14;

/// Raised when an iterative method fails or a computed quantity leaves its
/// admissible range by more than rounding noise. The message carries the
/// offending values.
class NumericError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// sqrt that absorbs tiny negative rounding and rejects anything larger.
double clamped_sqrt(double x);

/// A priori probabilities of the two input states.
class Priors {
   public:
    explicit Priors(double eta1);
    Priors(double eta1, double eta2);

    double eta1() const { return eta1_; }
    double eta2() const { return eta2_; }
    /// eta2 - eta1.
    double delta() const { return eta2_ - eta1_; }

    /// True when eta1 > 1/2, i.e. when the solvers work on the swapped problem.
    bool needs_swap() const { return eta1_ > 0.5; }
    Priors swapped() const { return Priors(eta2_, eta1_); }
    /// Returns priors with eta1 <= 1/2.
    Priors normalized() const { return needs_swap() ? swapped() : *this; }

   private:
    double eta1_;
    double eta2_;
};

/// Initial overlap s, final overlap s' and the overlap kappa of the success flags.
class OverlapSpec {
   public:
    OverlapSpec(double s, double s_prime, double kappa = 1.0);

    double s() const { return s_; }
    double s_prime() const { return s_prime_; }
    double kappa() const { return kappa_; }
    /// s' * kappa; the only combination the unitarity constraint depends on.
    double beta() const { return s_prime_ * kappa_; }

   private:
    double s_;
    double s_prime_;
    double kappa_;
};

/// Conditional failure probabilities (q1, q2).
struct FailurePoint {
    double q1 = 0;
    double q2 = 0;

    double p1() const { return 1 - q1; }
    double p2() const { return 1 - q2; }
    bool is_valid() const { return q1 >= 0 && q1 <= 1 && q2 >= 0 && q2 <= 1; }
    FailurePoint swapped() const { return {q2, q1}; }
};

/// An average failure probability (a value of Q, or a cap on it).
struct FailureBudget {
    double q = 0;

    static FailureBudget checked(double q);
};

/// eta1*q1 + eta2*q2.
FailureBudget average_failure(const FailurePoint &pt, const Priors &pr);

/// sqrt(p1 p2) beta + sqrt(q1 q2) - s. Zero on the unitarity curve, positive
/// inside the feasible set.
double unitarity_residual(const FailurePoint &pt, double s, double beta);
double unitarity_residual(const FailurePoint &pt, const OverlapSpec &ov);

bool in_feasible_set(const FailurePoint &pt, double s, double beta);
bool in_feasible_set(const FailurePoint &pt, const OverlapSpec &ov);

/// Which of the two solutions q2 of the unitarity constraint at fixed q1.
enum class Branch { Lower, Upper };

/// Solves the unitarity constraint for q2 at fixed q1 in closed form.
/// Returns NaN when no q2 in [0, 1] satisfies it.
double constraint_q2(double q1, double s, double beta, Branch branch = Branch::Lower);

/// Slopes of the unitarity curve next to its endpoints (1, s^2) and (s^2, 1).
struct EndpointTangencyReport {
    double offset = 0;
    /// dq2/dq1 at q1 = 1 - offset on the lower branch.
    double slope_near_lower_endpoint = 0;
    /// dq2/dq1 at q2 = 1 - offset on the upper branch.
    double slope_near_upper_endpoint = 0;
    /// |slope| above the threshold near (1, s^2).
    bool vertical_at_lower = false;
    /// |slope| below 1/threshold near (s^2, 1).
    bool horizontal_at_upper = false;
};

/// Estimates the curve slope by central differences close to both endpoints.
/// Rejects beta = 0, where the curve is a hyperbola arc with finite endpoint slopes.
EndpointTangencyReport endpoint_tangency_check(
    const OverlapSpec &ov, double offset = 1e-6, double threshold = 1e2);

}  // namespace qsep

#endif
