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

#include "qsep/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsep/conics.h"
#include "qsep/optics.h"
#include "qsep/oracle.h"
#include "qsep/sampling.h"

namespace qsep::verify {

namespace {

CheckResult make(std::string name, double worst, double tol, std::string detail = {}) {
    return {std::move(name), worst, tol, worst <= tol, std::move(detail)};
}

std::string where(std::initializer_list<std::pair<const char *, double>> fields) {
    std::ostringstream out;
    out.precision(6);
    bool first = true;
    for (const auto &[k, v] : fields) {
        out << (first ? "" : " ") << k << "=" << v;
        first = false;
    }
    return out.str();
}

/// Tracks the largest deviation and where it happened.
struct Worst {
    double value = 0;
    std::string at;

    void update(double dev, const std::string &location) {
        if (!(dev <= value)) {
            value = dev;
            at = location;
        }
    }
};

/// A uniformly random point of the feasible set at (s, beta).
FailurePoint random_feasible(UniformSource &rng, double s, double beta) {
    for (;;) {
        FailurePoint pt{rng.next(), rng.next()};
        if (in_feasible_set(pt, s, beta)) {
            return pt;
        }
    }
}

}  // namespace

double dense_hyperbola_minimum(double eta1, double s, int grid) {
    const double eta2 = 1 - eta1;
    const double lo = s * s;
    auto f = [&](double q1) { return eta1 * q1 + eta2 * s * s / q1; };
    if (s == 0) {
        return 0;
    }
    int best = 0;
    double best_val = f(lo);
    for (int k = 1; k < grid; ++k) {
        double v = f(lo + (1 - lo) * k / (grid - 1));
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }
    double a = lo + (1 - lo) * std::max(0, best - 1) / (grid - 1);
    double b = lo + (1 - lo) * std::min(grid - 1, best + 1) / (grid - 1);
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        if (f(c) <= f(d)) {
            b = d;
        } else {
            a = c;
        }
    }
    return std::min({best_val, f(a), f(b), f((a + b) / 2)});
}

CheckResult check_endpoint_identity() {
    Worst w;
    for (int i = 0; i <= 20; ++i) {
        double s = i / 20.0;
        for (int j = 0; j <= 20; ++j) {
            double beta = s * j / 20.0;
            double r = std::max(std::abs(unitarity_residual({1, s * s}, s, beta)),
                                std::abs(unitarity_residual({s * s, 1}, s, beta)));
            w.update(r, where({{"s", s}, {"beta", beta}}));
        }
    }
    return make("endpoint_identity", w.value, 1e-12, w.at);
}

CheckResult check_swap_symmetry(const VerifyOptions &opts) {
    UniformSource rng(opts.seed);
    Worst w;
    for (int i = 0; i < opts.random_trials; ++i) {
        double s = rng.next();
        double beta = rng.uniform(0, s);
        FailurePoint pt{rng.next(), rng.next()};
        double d = std::abs(unitarity_residual(pt, s, beta) - unitarity_residual(pt.swapped(), s, beta));
        w.update(d, where({{"q1", pt.q1}, {"q2", pt.q2}, {"s", s}}));
    }
    return make("swap_symmetry", w.value, 1e-15, w.at);
}

CheckResult check_set_nesting(const VerifyOptions &opts) {
    UniformSource rng(opts.seed + 1);
    int violations = 0;
    for (int i = 0; i < opts.random_trials; ++i) {
        double s = rng.next();
        double b1 = rng.uniform(0, s);
        double b2 = rng.uniform(b1, s);
        FailurePoint pt{rng.next(), rng.next()};
        if (in_feasible_set(pt, s, b1) && !in_feasible_set(pt, s, b2)) {
            ++violations;
        }
    }
    return make("set_nesting", violations, 0, "violations over " + std::to_string(opts.random_trials) + " trials");
}

CheckResult check_convexity(const VerifyOptions &opts) {
    UniformSource rng(opts.seed + 2);
    int violations = 0;
    int trials = 0;
    for (double s : {0.2, 0.5, 0.8}) {
        for (double frac : {0.0, 0.3, 0.7, 1.0}) {
            double beta = s * frac;
            for (int i = 0; i < opts.random_trials; ++i) {
                FailurePoint a = random_feasible(rng, s, beta);
                FailurePoint b = random_feasible(rng, s, beta);
                double lambda = rng.next();
                FailurePoint mix{lambda * a.q1 + (1 - lambda) * b.q1, lambda * a.q2 + (1 - lambda) * b.q2};
                violations += in_feasible_set(mix, s, beta) ? 0 : 1;
                ++trials;
            }
        }
    }
    return make("convexity", violations, 0, "violations over " + std::to_string(trials) + " trials");
}

CheckResult check_ud_closed_form() {
    Worst w;
    for (double s : {0.2, 0.4, 0.6, 0.8, 0.95}) {
        for (int i = 0; i < 10; ++i) {
            double eta1 = 0.02 + 0.96 * i / 9;
            double d = std::abs(q_ud(Priors(eta1), s).q - dense_hyperbola_minimum(eta1, s));
            w.update(d, where({{"eta1", eta1}, {"s", s}}));
        }
    }
    return make("ud_closed_form", w.value, 1e-8, w.at);
}

CheckResult check_oracle_agreement(const VerifyOptions &opts) {
    const int n = opts.oracle_grid;
    Worst w;
    int monotone_violations = 0;
    for (int i = 0; i < n; ++i) {
        double eta1 = 0.02 + 0.48 * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            double s = 0.1 + 0.8 * j / (n - 1);
            double prev = 2;
            for (int k = 0; k < n; ++k) {
                double sp = s * k / (n - 1);
                OverlapSpec ov(s, sp);
                double ref = oracle::oracle_qmin(Priors(eta1), ov).q.q;
                double got = qmin_at(Priors(eta1), ov).q.q;
                w.update(std::abs(ref - got), where({{"eta1", eta1}, {"s", s}, {"s'", sp}}));
                if (ref > prev + 1e-12) {
                    ++monotone_violations;
                }
                prev = ref;
            }
        }
    }
    CheckResult r = make("oracle_agreement", w.value, 1e-6, w.at);
    if (monotone_violations > 0) {
        r.passed = false;
        r.detail += " oracle Q_min increased with s' " + std::to_string(monotone_violations) + " times";
    }
    return r;
}

CheckResult check_round_trip(const VerifyOptions &opts) {
    UniformSource rng(opts.seed + 3);
    Worst w;
    for (int i = 0; i < opts.round_trip_instances; ++i) {
        double s = rng.uniform(0.1, 0.9);
        double sp = s * rng.uniform(0.05, 0.95);
        auto curve = qmin_curve(OverlapSpec(s, sp), 64);
        const QminSample &smp = curve[static_cast<std::size_t>(rng.integer(1, 62))];
        Priors pr(smp.eta1);
        MaxSeparation ms = opts.max_separation(pr, s, smp.q_min);
        TradeoffSample tr = tradeoff_at(pr, s, smp.q_min);
        double dev = std::max({std::abs(ms.s_prime - sp), std::abs(tr.s_prime - sp), std::abs(tr.q.q - smp.q_min.q)});
        w.update(dev, where({{"eta1", smp.eta1}, {"s", s}, {"s'", sp}, {"Q", smp.q_min.q}}));
    }
    return make("round_trip", w.value, 1e-6, w.at);
}

CheckResult check_conic_consistency(const VerifyOptions &opts) {
    UniformSource rng(opts.seed + 4);
    Worst w;
    int checked = 0;
    while (checked < 200) {
        Priors pr(rng.uniform(0.02, 0.48));
        double s = rng.uniform(0.1, 0.9);
        double ud = q_ud(pr, s).q;
        FailureBudget q{ud * rng.uniform(0.05, 0.95)};
        MaxSeparation ms = max_separation(pr, s, q);
        if (!ms.budget_saturated || ms.s_prime <= 0) {
            continue;
        }
        ++checked;
        TangencyResiduals res = tangency_residuals(ms.theta, q, pr, s, ms.s_prime);
        FailurePoint pt = from_conic(ellipse_point(ms.theta, q, pr)).first;
        double dev = std::max({std::abs(res.membership), std::abs(res.slope),
                               std::abs(average_failure(pt, pr).q - q.q),
                               std::abs(unitarity_residual(pt, s, ms.s_prime))});
        w.update(dev, where({{"eta1", pr.eta1()}, {"s", s}, {"Q", q.q}, {"s'", ms.s_prime}}));
    }
    return make("conic_consistency", w.value, 1e-9, w.at);
}

CheckResult check_phase_transition() {
    const double s = 0.6;
    const double eta_star = s * s / (1 + s * s);
    const double h = 1e-4;
    const double g = eta_star * (1 - eta_star);
    const double analytic = -s / (2 * g * std::sqrt(g));
    double jump_full = phase_transition_probe(s, 0, eta_star, h);
    double jump_smooth = phase_transition_probe(s, 0.05, eta_star, h);
    double rel = std::abs(jump_full - analytic) / std::abs(analytic);
    CheckResult r = make("phase_transition", rel, 0.05,
                         where({{"jump_s'=0", jump_full}, {"analytic", analytic}, {"jump_s'=0.05", jump_smooth}}));
    r.passed = r.passed && std::abs(jump_smooth) < 1e-2;
    return r;
}

CheckResult check_reference_separation() {
    MaxSeparation ms = max_separation(Priors(0.3), 0.4, {0.35});
    return make("reference_separation", std::abs(ms.s_prime - 0.032), 1e-3, where({{"s'", ms.s_prime}}));
}

CheckResult check_optics_exactness(const VerifyOptions &opts) {
    UniformSource rng(opts.seed + 5);
    Worst w;
    for (int i = 0; i < 100; ++i) {
        double s = rng.uniform(0, 0.99);
        double sp = rng.uniform(0, s);
        optics::Interferometer itf = optics::build_interferometer(s, sp);
        double q = itf.failure_probability();
        double p = 1 - q;
        optics::ModeState o1 = optics::apply(itf, optics::input_state(1, s));
        optics::ModeState o2 = optics::apply(itf, optics::input_state(2, s));
        const std::array<double, 3> e1{std::sqrt(p), 0, std::sqrt(q)};
        const std::array<double, 3> e2{std::sqrt(p) * sp, std::sqrt(p) * std::sqrt(1 - sp * sp), std::sqrt(q)};
        double dev = std::max({optics::unitarity_deviation(itf.u), optics::unitarity_deviation(itf.bs1),
                               optics::unitarity_deviation(itf.bs2), optics::factorization_deviation(itf)});
        for (int k = 0; k < 3; ++k) {
            dev = std::max(dev, std::abs(o1.amplitudes[static_cast<std::size_t>(k)] - e1[static_cast<std::size_t>(k)]));
            dev = std::max(dev, std::abs(o2.amplitudes[static_cast<std::size_t>(k)] - e2[static_cast<std::size_t>(k)]));
        }
        w.update(dev, where({{"s", s}, {"s'", sp}}));
    }
    return make("optics_exactness", w.value, 1e-12, w.at);
}

CheckResult check_optics_statistics(const VerifyOptions &opts) {
    double worst_z = 0;
    bool ok = true;
    std::string detail;
    for (double sp : {0.3, 0.0}) {
        auto rep = optics::certify_separation(optics::build_interferometer(0.6, sp), opts.shots, opts.seed);
        ok = ok && rep.passed;
        for (const auto &in : rep.inputs) {
            worst_z = std::max(worst_z, in.z_score);
        }
        detail += where({{"s'", sp}, {"q1_hat", rep.inputs[0].empirical_q}, {"q2_hat", rep.inputs[1].empirical_q}}) + "; ";
    }
    CheckResult r = make("optics_statistics", worst_z, 3, detail);
    r.passed = r.passed && ok;
    return r;
}

std::vector<CheckResult> run_all(const VerifyOptions &opts) {
    std::vector<CheckResult> out;
    auto guarded = [&](const char *name, auto &&fn) {
        try {
            out.push_back(fn());
        } catch (const std::exception &e) {
            out.push_back({name, std::numeric_limits<double>::infinity(), 0, false, e.what()});
        }
    };
    guarded("endpoint_identity", [] { return check_endpoint_identity(); });
    guarded("swap_symmetry", [&] { return check_swap_symmetry(opts); });
    guarded("set_nesting", [&] { return check_set_nesting(opts); });
    guarded("convexity", [&] { return check_convexity(opts); });
    guarded("ud_closed_form", [] { return check_ud_closed_form(); });
    guarded("oracle_agreement", [&] { return check_oracle_agreement(opts); });
    guarded("round_trip", [&] { return check_round_trip(opts); });
    guarded("conic_consistency", [&] { return check_conic_consistency(opts); });
    guarded("phase_transition", [] { return check_phase_transition(); });
    guarded("reference_separation", [] { return check_reference_separation(); });
    guarded("optics_exactness", [&] { return check_optics_exactness(opts); });
    guarded("optics_statistics", [&] { return check_optics_statistics(opts); });
    return out;
}

}  // namespace qsep::verify
