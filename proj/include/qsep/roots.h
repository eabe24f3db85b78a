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

#ifndef QSEP_ROOTS_H
#define QSEP_ROOTS_H

#include <cmath>
#include <sstream>
#include <string>

#include "qsep/core.h"

namespace qsep {

struct RootOptions {
    /// Stop once the bracket is this narrow.
    double xtol = 1e-12;
    int max_iterations = 300;
    /// Number of points used to look for a sign change when the endpoints do not bracket.
    int scan_points = 10000;
    /// Free-form context added to error messages.
    std::string label = "root";
};

struct RootResult {
    double x = 0;
    double fx = 0;
    int iterations = 0;
    bool used_scan = false;
};

namespace detail {

template <typename F>
RootResult refine_bracket(F &&f, double a, double fa, double b, double fb, const RootOptions &opts) {
    RootResult res;
    bool force_bisect = false;
    while (res.iterations < opts.max_iterations) {
        if (fa == 0) {
            return {a, fa, res.iterations, false};
        }
        if (fb == 0) {
            return {b, fb, res.iterations, false};
        }
        double width = std::abs(b - a);
        double mid = a + (b - a) / 2;
        if (width <= opts.xtol || mid == a || mid == b) {
            break;
        }
        ++res.iterations;

        double c = mid;
        if (!force_bisect && fb != fa) {
            double secant = b - fb * (b - a) / (fb - fa);
            double lo = std::min(a, b);
            double hi = std::max(a, b);
            if (secant > lo && secant < hi) {
                c = secant;
            }
        }
        double fc = f(c);
        if ((fc < 0) == (fa < 0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
        // Secant steps that keep hugging one endpoint are followed by a bisection.
        force_bisect = !force_bisect && std::abs(b - a) > width / 2;
    }
    if (std::abs(fa) <= std::abs(fb)) {
        return {a, fa, res.iterations, false};
    }
    return {b, fb, res.iterations, false};
}

}  // namespace detail

/// Finds a root of f in [lo, hi] by bisection interleaved with secant steps.
///
/// When f(lo) and f(hi) share a sign, [lo, hi] is scanned on a uniform grid for
/// the first sign change and that cell is refined instead. Throws NumericError
/// when no sign change exists.
template <typename F>
RootResult find_root(F &&f, double lo, double hi, const RootOptions &opts = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (std::isnan(flo) || std::isnan(fhi)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << opts.label << ": NaN at bracket endpoints [" << lo << ", " << hi << "]";
        throw NumericError(msg.str());
    }
    if (flo == 0 || fhi == 0 || (flo < 0) != (fhi < 0)) {
        return detail::refine_bracket(f, lo, flo, hi, fhi, opts);
    }

    double prev_x = lo;
    double prev_f = flo;
    for (int k = 1; k <= opts.scan_points; ++k) {
        double x = lo + (hi - lo) * k / opts.scan_points;
        double fx = f(x);
        if (!std::isnan(fx) && !std::isnan(prev_f) && (fx == 0 || (fx < 0) != (prev_f < 0))) {
            RootResult res = detail::refine_bracket(f, prev_x, prev_f, x, fx, opts);
            res.used_scan = true;
            return res;
        }
        prev_x = x;
        prev_f = fx;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << opts.label << ": no sign change on [" << lo << ", " << hi << "] (f(lo) = " << flo << ", f(hi) = " << fhi
        << ", " << opts.scan_points << " scan points)";
    throw NumericError(msg.str());
}

}  // namespace qsep

#endif
