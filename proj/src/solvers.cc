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

#include "qsep/solvers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qsep/roots.h"

namespace qsep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMonotoneTol = 1e-10;
constexpr double kSolverXtol = 1e-15;

template <typename... Args>
std::string diag(const char *what, Args... values) {
    std::ostringstream out;
    out.precision(17);
    out << what;
    ((out << ' ' << values), ...);
    return out.str();
}

/// Snaps values within `tol` outside [lo, hi] back onto the interval.
double snap(double x, double lo, double hi, double tol, const char *what) {
    if (x < lo) {
        if (x < lo - tol) {
            throw NumericError(diag(what, "below", lo, ":", x));
        }
        return lo;
    }
    if (x > hi) {
        if (x > hi + tol) {
            throw NumericError(diag(what, "above", hi, ":", x));
        }
        return hi;
    }
    return x;
}

void require_overlap(double s, const char *what) {
    if (!(s >= 0 && s <= 1)) {
        throw std::invalid_argument(diag(what, "must lie in [0, 1], got", s));
    }
}

/// Priors with eta1 <= 1/2 and 0 < Delta < 1, where the angle parametrisations apply.
void require_generic_priors(const Priors &pr) {
    double delta = pr.delta();
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument(diag("angle parametrisation needs 0 < eta2 - eta1 < 1, got", delta));
    }
}

MinFailure swap_back(MinFailure m, bool swapped) {
    if (swapped) {
        m.point = m.point.swapped();
    }
    return m;
}

}  // namespace

MinFailure unambiguous_discrimination(const Priors &pr, double s) {
    require_overlap(s, "initial overlap");
    const double s2 = s * s;
    const double eta1 = pr.eta1();
    const double eta2 = pr.eta2();
    if (eta1 <= s2 / (1 + s2)) {
        return {{eta1 + s2 * eta2}, {1, s2}, kNaN};
    }
    if (eta1 >= 1 / (1 + s2)) {
        return {{eta1 * s2 + eta2}, {s2, 1}, kNaN};
    }
    double g = std::sqrt(eta1 * eta2) * s;
    return {{2 * g}, {g / eta1, g / eta2}, kNaN};
}

CurveRange curve_range(double s, double s_prime) {
    if (!(s_prime > 0 && s_prime < s && s <= 1)) {
        throw std::invalid_argument(diag("curve parametrisation needs 0 < s' < s <= 1, got s =", s, "s' =", s_prime));
    }
    // s - s' is exact when the overlaps are close, unlike 1 - s'/s.
    const double gap = s - s_prime;
    return {gap / (s * (1 - s_prime)), gap * (s + s_prime) / (s * s * (1 - s_prime * s_prime))};
}

namespace {

// x, y of the parametrisation with 1 - x and 1 - y formed without cancellation;
// both approach 0 when s' -> s, and 1 - y vanishes at t_-1.
struct CurveCoords {
    double x = 0;
    double y = 0;
    double rx = 0;
    double ry = 0;
    /// 1 - x y
    double one_minus_xy = 0;
};

CurveCoords curve_coords(double t, double s, double s_prime) {
    const double gap = s - s_prime;
    const double omx = (s * (1 + s_prime) * t - gap) / s_prime;
    const double omy = (s * (1 - s_prime) * t - gap) / s_prime;
    CurveCoords c;
    c.x = 1 - omx;
    c.y = 1 - omy;
    c.rx = clamped_sqrt(omx * (2 - omx));
    c.ry = clamped_sqrt(omy * (2 - omy));
    c.one_minus_xy = omx + c.x * omy;
    return c;
}

}  // namespace

FailurePoint lower_half_point(double t, double s, double s_prime) {
    CurveRange range = curve_range(s, s_prime);
    if (t < range.t_minus1 - 1e-15 || t > 1 + 1e-15) {
        throw std::out_of_range(diag("curve parameter outside [t_-1, 1]:", t));
    }
    CurveCoords c = curve_coords(std::max(t, range.t_minus1), s, s_prime);
    double root = c.rx * c.ry;
    return {(c.one_minus_xy + root) / 2, (c.one_minus_xy - root) / 2};
}

FailurePoint curve_point(double t, const OverlapSpec &ov) {
    CurveRange range = curve_range(ov.s(), ov.beta());
    if (t < range.t_minus1 || t > range.t0) {
        throw std::out_of_range(diag("curve parameter outside [t_-1, t_0]:", t, "not in", range.t_minus1, range.t0));
    }
    return lower_half_point(t, ov.s(), ov.beta());
}

QminSample qmin_sample(double t, double s, double s_prime) {
    QminSample out;
    out.t = t;
    out.point = lower_half_point(t, s, s_prime);
    const CurveCoords c = curve_coords(t, s, s_prime);
    const double rx = c.rx;
    const double ry = c.ry;
    const double g1 = clamped_sqrt(out.point.q1 * out.point.p1());
    const double g2 = clamped_sqrt(out.point.q2 * out.point.p2());

    // Both derivatives share the factor 1 / (rx * ry); the ratios below use the
    // rescaled values, which stay finite on the diagonal where ry = 0.
    const double a = (1 + s_prime) * ry;
    const double b = (1 - s_prime) * rx;
    // a - b from a^2 - b^2 = -4 s^2 (1 - s'^2) (t0 - t) / s', exact in sign near t0.
    const double t0 = curve_range(s, s_prime).t0;
    const double a_minus_b = -4 * s * s * (1 - s_prime * s_prime) * (t0 - t) / (s_prime * (a + b));
    const double d1 = g1 * (a + b);
    const double d2 = g2 * a_minus_b;
    const double denom = d2 - d1;
    out.eta1 = snap(d2 / denom, 0, 0.5, 1e-12, "tangency prior");
    out.q_min = {(d2 * out.point.q1 - d1 * out.point.q2) / denom};

    const double scale = s / s_prime / (rx * ry);
    out.dq1 = d1 * scale;
    out.dq2 = d2 * scale;
    return out;
}

std::vector<QminSample> qmin_curve(const OverlapSpec &ov, int n_samples) {
    if (n_samples < 2) {
        throw std::invalid_argument("qmin_curve needs at least two samples");
    }
    const double s = ov.s();
    const double sp = ov.beta();
    CurveRange range = curve_range(s, sp);
    std::vector<QminSample> out;
    out.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        double t = k + 1 == n_samples ? range.t0
                                      : range.t_minus1 + (range.t0 - range.t_minus1) * k / (n_samples - 1);
        out.push_back(qmin_sample(t, s, sp));
        if (k > 0 && out[k].eta1 > out[k - 1].eta1 + kMonotoneTol) {
            throw NumericError(diag("tangency prior not monotone along the curve: t =", out[k - 1].t, "->", t,
                                    "eta1 =", out[k - 1].eta1, "->", out[k].eta1, "s =", s, "s' =", sp));
        }
    }
    return out;
}

MinFailure qmin_at(const Priors &pr, const OverlapSpec &ov) {
    const double s = ov.s();
    const double sp = ov.beta();
    if (sp >= s) {
        return {{0}, {0, 0}, kNaN};
    }
    // The curve collapses to a point as s' -> s. Equal failure on both inputs
    // is feasible and within (s - s') / (1 - s') of the minimum.
    const double equal_q = (s - sp) / (1 - sp);
    if (equal_q <= 1e-12) {
        return {{equal_q}, {equal_q, equal_q}, kNaN};
    }
    if (sp == 0) {
        return unambiguous_discrimination(pr, s);
    }
    const Priors n = pr.normalized();
    const double target = n.eta1();
    CurveRange range = curve_range(s, sp);

    double t;
    if (target >= 0.5) {
        t = range.t_minus1;
    } else if (target <= 0) {
        t = range.t0;
    } else {
        RootOptions opts;
        opts.xtol = kSolverXtol;
        opts.label = "tangency parameter";
        auto f = [&](double tt) { return qmin_sample(tt, s, sp).eta1 - target; };
        t = find_root(f, range.t_minus1, range.t0, opts).x;
    }
    FailurePoint pt = lower_half_point(t, s, sp);
    // Evaluated at the requested prior: the error is second order in t.
    MinFailure m{average_failure(pt, n), pt, t};
    return swap_back(m, pr.needs_swap());
}

double separation_overlap_at(double theta, const Priors &pr, FailureBudget q) {
    const double delta = pr.delta();
    const double d = delta + q.q * std::sin(theta);
    const double one_minus_q = 1 - q.q;
    return -clamped_sqrt(one_minus_q * one_minus_q - d * d) / d * std::tan(theta);
}

double initial_overlap_at(double theta, const Priors &pr, FailureBudget q) {
    const double delta = pr.delta();
    const double qq = q.q;
    const double sn = std::sin(theta);
    const double num = qq * delta * (1 + sn * sn) - (1 - delta * delta - 2 * qq) * sn;
    return num / (std::sqrt(1 - delta * delta) * (delta + qq * sn) * std::cos(theta));
}

AngleRange max_separation_angle_range(const Priors &pr, FailureBudget q) {
    require_generic_priors(pr);
    const double delta = pr.delta();
    AngleRange r;
    r.lo = -std::asin(delta);
    r.hi = q.q <= 1 - delta ? 0.0 : std::asin(std::min(1.0, (1 - q.q - delta) / q.q));
    return r;
}

double critical_overlap(const Priors &pr, FailureBudget q_max) {
    const Priors n = pr.normalized();
    const double eta1 = n.eta1();
    const double eta2 = n.eta2();
    if (q_max.q <= 2 * eta1) {
        return q_max.q / (2 * std::sqrt(eta1 * eta2));
    }
    return std::min(1.0, std::sqrt((q_max.q - eta1) / eta2));
}

MaxSeparation max_separation(const Priors &pr, double s, FailureBudget q_max) {
    require_overlap(s, "initial overlap");
    FailureBudget::checked(q_max.q);
    const Priors n = pr.normalized();
    const double qq = q_max.q;
    const double delta = n.delta();
    const bool generic = delta > 0 && delta < 1;

    if (s == 0 || qq >= q_ud(n, s).q || s <= critical_overlap(n, q_max)) {
        double theta = generic ? max_separation_angle_range(n, q_max).hi : kNaN;
        return {0, theta, false};
    }
    if (delta == 0) {
        return {(s - qq) / (1 - qq), 0, true};
    }
    if (delta == 1) {
        // Only q2 is weighted; the cheapest point is the bottom of the curve.
        return {std::sqrt((s * s - qq) / (1 - qq)), -std::numbers::pi / 2, true};
    }
    AngleRange range = max_separation_angle_range(n, q_max);
    if (s == 1) {
        return {1, range.lo, true};
    }
    const double c = std::sqrt(1 - delta * delta);
    if (qq == 0) {
        return {s, -std::atan(s * delta / c), true};
    }

    RootOptions opts;
    opts.xtol = kSolverXtol;
    opts.label = "max-separation tangency angle";
    auto f = [&](double theta) { return initial_overlap_at(theta, n, q_max) - s; };
    double theta = find_root(f, range.lo, range.hi, opts).x;
    double sp = snap(separation_overlap_at(theta, n, q_max), 0, s, 1e-9, "final overlap");
    return {sp, theta, true};
}

AngleRange tradeoff_angle_range(const Priors &pr, double s) {
    require_generic_priors(pr);
    const double delta = pr.delta();
    const double c = std::sqrt(1 - delta * delta);
    AngleRange r;
    r.lo = -std::atan(s * delta / c);
    if (pr.eta1() >= s * s / (1 + s * s)) {
        r.hi = 0;
    } else {
        r.hi = -std::acos(std::min(1.0, 2 * s * c / (1 - delta + s * s * (1 + delta))));
    }
    return r;
}

TradeoffSample tradeoff_point(double theta, const Priors &pr, double s) {
    require_generic_priors(pr);
    const double delta = pr.delta();
    const double c = std::sqrt(1 - delta * delta);
    const double sn = std::sin(theta);
    const double cs = std::cos(theta);
    const double bracket = c * (1 + s * s) * cs - 2 * s * (1 + delta * sn);
    const double ratio = sn / (delta + sn);
    double sp2 = c * ratio * ratio * bracket / cs;
    sp2 = snap(sp2, 0, s * s, 1e-9, "squared final overlap");
    // s'^2 cot(theta), written without the removable 0/0 at theta = 0.
    const double sp2_cot = c * sn * bracket / ((delta + sn) * (delta + sn));
    double q = (s * c + delta * sp2_cot) / ((1 - sp2) * cs);
    q = snap(q, 0, 1, 1e-9, "tradeoff failure probability");
    return {theta, s, std::sqrt(sp2), {q}};
}

namespace {

TradeoffSample equal_prior_tradeoff(double s, double q) { return {0, s, (s - q) / (1 - q), {q}}; }

TradeoffSample one_sided_tradeoff(double s, double q) {
    return {-std::numbers::pi / 2, s, std::sqrt(std::max(0.0, (s * s - q) / (1 - q))), {q}};
}

}  // namespace

std::vector<TradeoffSample> tradeoff_curve(const Priors &pr, double s, int n_samples) {
    if (!(s > 0 && s < 1)) {
        throw std::invalid_argument(diag("tradeoff curve needs 0 < s < 1, got", s));
    }
    if (n_samples < 2) {
        throw std::invalid_argument("tradeoff_curve needs at least two samples");
    }
    const Priors n = pr.normalized();
    const double delta = n.delta();
    std::vector<TradeoffSample> out;
    out.reserve(n_samples);
    auto fraction = [&](int k) { return static_cast<double>(k) / (n_samples - 1); };

    if (delta == 0 || delta == 1) {
        const double q_end = q_ud(n, s).q;
        for (int k = 0; k < n_samples; ++k) {
            double q = k + 1 == n_samples ? q_end : q_end * fraction(k);
            out.push_back(delta == 0 ? equal_prior_tradeoff(s, q) : one_sided_tradeoff(s, q));
        }
        return out;
    }

    AngleRange range = tradeoff_angle_range(n, s);
    for (int k = 0; k < n_samples; ++k) {
        double theta = k + 1 == n_samples ? range.hi : range.lo + (range.hi - range.lo) * fraction(k);
        out.push_back(tradeoff_point(theta, n, s));
        if (k + 1 == n_samples) {
            // s'^2 vanishes at theta_max; its rounding error would survive the square root.
            out.back().s_prime = 0;
        }
        if (k > 0) {
            const TradeoffSample &a = out[k - 1];
            const TradeoffSample &b = out[k];
            if (b.q.q < a.q.q - kMonotoneTol || b.s_prime > a.s_prime + kMonotoneTol) {
                throw NumericError(diag("tradeoff curve not monotone at theta =", a.theta, "->", b.theta, "Q =",
                                        a.q.q, "->", b.q.q, "s' =", a.s_prime, "->", b.s_prime));
            }
        }
    }
    return out;
}

TradeoffSample tradeoff_at(const Priors &pr, double s, FailureBudget q) {
    if (!(s > 0 && s < 1)) {
        throw std::invalid_argument(diag("tradeoff curve needs 0 < s < 1, got", s));
    }
    FailureBudget::checked(q.q);
    const Priors n = pr.normalized();
    const double delta = n.delta();
    const double q_end = q_ud(n, s).q;
    const double qq = std::min(q.q, q_end);
    if (delta == 0) {
        return equal_prior_tradeoff(s, qq);
    }
    if (delta == 1) {
        return one_sided_tradeoff(s, qq);
    }
    AngleRange range = tradeoff_angle_range(n, s);
    if (qq >= q_end) {
        TradeoffSample end = tradeoff_point(range.hi, n, s);
        end.s_prime = 0;
        return end;
    }
    RootOptions opts;
    opts.xtol = kSolverXtol;
    opts.label = "tradeoff angle";
    auto f = [&](double theta) { return tradeoff_point(theta, n, s).q.q - qq; };
    return tradeoff_point(find_root(f, range.lo, range.hi, opts).x, n, s);
}

CloneBound max_clones(double s, FailureBudget q_max, const Priors &pr) {
    if (!(s > 0 && s < 1)) {
        throw std::domain_error(diag("clone count needs 0 < s < 1, got", s));
    }
    MaxSeparation ms = max_separation(pr, s, q_max);
    CloneBound out;
    out.s_prime_min = ms.s_prime;
    if (ms.s_prime > 0) {
        // s^n must not drop below s'_min; the slack absorbs rounding in exact powers.
        out.n_max = static_cast<int>(std::floor(std::log(ms.s_prime) / std::log(s) + 1e-12));
    }
    return out;
}

double phase_transition_probe(double s, double s_prime, double eta_star, double h) {
    if (!(eta_star > 0 && eta_star < 0.5)) {
        throw std::invalid_argument(diag("probe prior must lie in (0, 1/2), got", eta_star));
    }
    if (!(h > 0 && h < eta_star / 4)) {
        throw std::invalid_argument(diag("probe step must lie in (0, eta_star / 4), got", h));
    }
    const OverlapSpec ov(s, s_prime);
    auto q = [&](double eta1) { return qmin_at(Priors(eta1), ov).q.q; };
    const double q0 = q(eta_star);
    const double right = (q(eta_star + 2 * h) - 2 * q(eta_star + h) + q0) / (h * h);
    const double left = (q0 - 2 * q(eta_star - h) + q(eta_star - 2 * h)) / (h * h);
    return right - left;
}

}  // namespace qsep
