#pragma once
//
// Percentage points of the Student distribution: the a with S_nu(a) = alpha.
//
// Three routes:
//  - quantile_oracle: root of the exact survival function;
//  - quantile_invert_sf: root of an order-i shifted-normal approximation;
//  - theorem2_solve: root of one of three closed equations in the Mills
//    ratio Psi(lambda) / phi(lambda), obtained by Taylor-expanding the
//    shifted-normal approximation around lambda.
//
// In the level equations the corrections d_k are evaluated at
// delta_lambda = lambda sqrt((nu - 2) / nu), as in the survival
// approximation they were expanded from, and the level-3 cubic block is
// ((lambda^2 - 1) / 6) (lambda + d1)^3 / nu^3. The variant with only the
// lambda^3 + d1^3 part of that cube is kept as Level3Cubic::as_printed.
//

#include <cmath>
#include <cstdio>
#include <string>

#include "studentt/detail/solvers.hpp"
#include "studentt/errors.hpp"
#include "studentt/special_fn.hpp"
#include "studentt/student_exact.hpp"
#include "studentt/survival_approx.hpp"

namespace studentt {

enum class QuantileMethod { oracle, invert_sf, theorem2 };

inline const char* to_string(QuantileMethod m) noexcept {
    switch (m) {
        case QuantileMethod::oracle: return "oracle";
        case QuantileMethod::invert_sf: return "invert_sf";
        case QuantileMethod::theorem2: return "theorem2";
    }
    return "unknown";
}

enum class Level3Cubic { full, as_printed };

struct QuantileResult {
    double lambda = 0.0;
    double residual = 0.0;  // value of the solved equation at lambda
    int iterations = 0;
    QuantileMethod method = QuantileMethod::oracle;
    int level = 0;  // approximation order (invert_sf) or equation level (theorem2)
};

/// Residual tolerances of the three solvers.
inline constexpr double approx_solver_tol = 1e-12;
inline constexpr double oracle_solver_tol = 1e-13;

/// Tail probabilities whose normal point lies beyond this many standard
/// deviations are outside the region the approximations address.
inline constexpr double quantile_window_delta = 10.0;

namespace detail {

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw domain_error("alpha must lie strictly inside (0, 1)");
    }
}

inline void check_alpha_in_window(double alpha) {
    check_alpha(alpha);
    const double tail = normal_sf(quantile_window_delta);
    if (alpha < tail || alpha > 1.0 - tail) {
        throw range_error("alpha lies outside the approximation window |delta| <= 10", tail,
                          1.0 - tail);
    }
}

/// Grow [q - 1.5, q + 1.5] geometrically around the normal point until f
/// changes sign or |x| would exceed limit.
template <class F>
std::pair<double, double> find_bracket(F&& f, double alpha, double limit, double& f_lo_out,
                                       double& f_hi_out) {
    const double center = normal_isf(alpha);
    double half = 1.5;
    for (;;) {
        const double lo = std::max(center - half, -limit);
        const double hi = std::min(center + half, limit);
        const double f_lo = f(lo);
        const double f_hi = f(hi);
        f_lo_out = f_lo;
        f_hi_out = f_hi;
        if ((f_lo > 0.0) != (f_hi > 0.0) || f_lo == 0.0 || f_hi == 0.0) {
            return {lo, hi};
        }
        if (lo <= -limit && hi >= limit) {
            return {std::nan(""), std::nan("")};
        }
        half *= 2.0;
    }
}

}  // namespace detail

/// Root of S_nu(a) = alpha on the exact survival function.
inline QuantileResult quantile_oracle_result(DegreesOfFreedom nu, double alpha) {
    detail::check_alpha(alpha);
    auto f = [&](double a) { return student_sf_exact(nu, a) - alpha; };
    auto df = [&](double a) { return -student_pdf(nu, a); };
    double f_lo = 0.0, f_hi = 0.0;
    const auto [lo, hi] = detail::find_bracket(f, alpha, 1e12, f_lo, f_hi);
    if (std::isnan(lo)) {
        throw convergence_error("quantile_oracle: no bracket found");
    }
    const auto root = detail::safeguarded_newton(f, df, lo, hi, oracle_solver_tol, 400);
    return {root.x, root.residual, root.iterations, QuantileMethod::oracle, 0};
}

inline double quantile_oracle(DegreesOfFreedom nu, double alpha) {
    return quantile_oracle_result(nu, alpha).lambda;
}

/// Root of survival_approx(nu, a, order) = alpha.
inline QuantileResult quantile_invert_sf(DegreesOfFreedom nu, double alpha, ApproxOrder order) {
    detail::check_alpha_in_window(alpha);
    const double limit = quantile_window_delta / nu.scale();
    auto f = [&](double a) { return survival_approx(nu, a, order) - alpha; };
    auto df = [&](double a) { return survival_approx_derivative(nu, a, order); };
    double f_lo = 0.0, f_hi = 0.0;
    const auto [lo, hi] = detail::find_bracket(f, alpha, limit, f_lo, f_hi);
    if (std::isnan(lo)) {
        const double s_lo = f_lo + alpha;
        const double s_hi = f_hi + alpha;
        char msg[200];
        std::snprintf(msg, sizeof msg,
                      "quantile_invert_sf: alpha = %.6g not attained; the approximation spans "
                      "[%.6g, %.6g] over the window",
                      alpha, std::min(s_lo, s_hi), std::max(s_lo, s_hi));
        throw range_error(msg, std::min(s_lo, s_hi), std::max(s_lo, s_hi));
    }
    const auto root = detail::safeguarded_newton(f, df, lo, hi, approx_solver_tol);
    return {root.x, root.residual, root.iterations, QuantileMethod::invert_sf, to_int(order)};
}

inline void check_theorem2_level(int level) {
    if (level < 1 || level > 3) {
        throw domain_error("theorem2 level must be 1, 2 or 3, got " + std::to_string(level));
    }
}

/// Right-hand side of the level-1/2/3 percentage-point equation
///   alpha / phi(lambda) = rhs(lambda).
inline double theorem2_rhs(DegreesOfFreedom nu, double lambda, int level,
                           Level3Cubic cubic = Level3Cubic::full) {
    check_theorem2_level(level);
    if (!std::isfinite(lambda)) {
        throw domain_error("theorem2_rhs: lambda must be finite");
    }
    const double n = nu.value();
    const double n2 = n * n;
    const double n3 = n2 * n;
    const double l = lambda;
    const double delta = standardize(nu, l).delta;
    const double d1 = correction_d(1, delta);
    const double mills = mills_ratio(l);
    if (level == 1) {
        return mills + (l + d1) / n;
    }
    const double d2 = correction_d(2, delta);
    if (level == 2) {
        return mills + (l / n + l / (2.0 * n2) + d1 / n + d2 / n2 - d1 / n2) +
               0.5 * l * (l * l + 2.0 * l * d1 + d1 * d1) / n2;
    }
    const double d3 = correction_d(3, delta);
    const double linear = l / n + l / (2.0 * n2) + l / (2.0 * n3) + d1 / n + d2 / n2 + d3 / n3 -
                          d1 / n2 - d2 / n3 - d1 / (2.0 * n3);
    const double square = (l * l + 2.0 * l * d1 + d1 * d1) / n2 +
                          (l * l + 2.0 * l * d2 - l * d1 + 2.0 * d1 * d2 - 2.0 * d1 * d1) / n3;
    const double cube = cubic == Level3Cubic::full ? (l + d1) * (l + d1) * (l + d1)
                                                   : l * l * l + d1 * d1 * d1;
    return mills + linear + 0.5 * l * square + (l * l - 1.0) / 6.0 * cube / n3;
}

/// Solves alpha / phi(lambda) = theorem2_rhs(nu, lambda, level) by Newton
/// with a central-difference slope, safeguarded by bisection.
inline QuantileResult theorem2_solve(DegreesOfFreedom nu, double alpha, int level,
                                     Level3Cubic cubic = Level3Cubic::full) {
    check_theorem2_level(level);
    detail::check_alpha_in_window(alpha);
    const double limit = quantile_window_delta / nu.scale();
    auto g = [&](double l) { return alpha / normal_pdf(l) - theorem2_rhs(nu, l, level, cubic); };
    auto dg = [&](double l) {
        constexpr double h = 1e-6;
        return (g(l + h) - g(l - h)) / (2.0 * h);
    };
    double g_lo = 0.0, g_hi = 0.0;
    const auto [lo, hi] = detail::find_bracket(g, alpha, limit, g_lo, g_hi);
    if (std::isnan(lo)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "theorem2_solve: no sign change of the level equation inside the window "
                      "for alpha = %.6g",
                      alpha);
        throw range_error(msg, -limit, limit);
    }
    const auto root = detail::safeguarded_newton(g, dg, lo, hi, approx_solver_tol);
    return {root.x, root.residual, root.iterations, QuantileMethod::theorem2, level};
}

}  // namespace studentt
