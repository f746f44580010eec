#pragma once
//
// One-dimensional maximization and root finding shared by the error scans,
// the extremal constants and the quantile solvers.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "studentt/errors.hpp"

namespace studentt::detail {

struct MaximizeResult {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};

/// Golden-section search for the maximum of f on [lo, hi]; f is assumed
/// unimodal there. Stops when the bracket is narrower than x_tol.
template <class F>
MaximizeResult golden_section_maximize(F&& f, double lo, double hi, double x_tol,
                                       int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498948482;  // (sqrt 5 - 1) / 2
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int it = 0;
    while (b - a > x_tol && it < max_iter) {
        ++it;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // The endpoints may beat the interior probes when the maximum sits on
    // the boundary of [lo, hi].
    MaximizeResult best{fc >= fd ? c : d, fc >= fd ? fc : fd, it};
    for (double edge : {lo, hi}) {
        const double fe = f(edge);
        if (fe > best.value) best = {edge, fe, it};
    }
    return best;
}

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Newton iteration kept inside a sign-change bracket [lo, hi]; any step
/// that leaves the bracket or fails to halve |f| is replaced by bisection.
/// Converges when |f(x)| <= f_tol. f(lo) and f(hi) must differ in sign.
template <class F, class DF>
RootResult safeguarded_newton(F&& f, DF&& df, double lo, double hi, double f_tol,
                              int max_iter = 200) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, 0.0, 0, lo, hi};
    if (f_hi == 0.0) return {hi, 0.0, 0, lo, hi};
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw domain_error("safeguarded_newton: bracket does not straddle a root");
    }
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    double prev_abs = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        if (std::fabs(fx) <= f_tol) return {x, fx, it, lo, hi};
        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        const double slope = df(x);
        double next = x - fx / slope;
        const bool newton_ok = std::isfinite(next) && next > lo && next < hi &&
                               std::fabs(fx) <= 0.5 * prev_abs;
        if (!newton_ok) next = 0.5 * (lo + hi);
        prev_abs = std::fabs(fx);
        if (next == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                                         std::max(1.0, std::fabs(x))) {
            // Bracket exhausted at machine resolution: keep the better end.
            const double fn = f(next);
            if (std::fabs(fn) <= f_tol) return {next, fn, it, lo, hi};
            const double best = std::fabs(f_lo) < std::fabs(f_hi) ? lo : hi;
            const double fb = std::fabs(f_lo) < std::fabs(f_hi) ? f_lo : f_hi;
            if (std::fabs(fb) <= f_tol) return {best, fb, it, lo, hi};
            throw convergence_error("root solver stalled at machine resolution", best, fb, lo,
                                    hi);
        }
        x = next;
        fx = f(x);
    }
    throw convergence_error("root solver exceeded " + std::to_string(max_iter) + " iterations",
                            x, fx, lo, hi);
}

}  // namespace studentt::detail
