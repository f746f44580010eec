#pragma once
//
// Shifted-normal approximations of the Student survival function.
//
// The order-i approximation replaces S_nu(a) by Psi(delta_{a - c}) with the
// endpoint shift c = sum_{k<=i} d_k(delta_a) / nu^k, where the d_k are odd
// polynomials chosen so that the first i terms of the 1/nu error expansion
// cancel. The maximal error then behaves like M_i / nu^{i+1}, where M_i is
// the maximum of |d_{i+1}(y)| phi(y).
//
// d3 carries a + sign: solving the nu^{-3} cancellation condition gives
//   d3 = (delta / 384) (35 delta^6 - 293 delta^4 + 1025 delta^2 - 1767).
// With the opposite sign the order-3 error decays only like nu^{-3}.
//

#include <array>
#include <cmath>
#include <future>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "studentt/detail/solvers.hpp"
#include "studentt/errors.hpp"
#include "studentt/rational.hpp"
#include "studentt/special_fn.hpp"
#include "studentt/student_exact.hpp"

namespace studentt {

/// Number of correction terms d_k in the shift.
enum class ApproxOrder : int { zero = 0, one = 1, two = 2, three = 3 };

inline ApproxOrder make_approx_order(int order) {
    if (order < 0 || order > 3) {
        throw domain_error("approximation order must be 0, 1, 2 or 3, got " +
                           std::to_string(order));
    }
    return static_cast<ApproxOrder>(order);
}

inline int to_int(ApproxOrder order) noexcept { return static_cast<int>(order); }

namespace detail {

inline const std::array<RationalPolynomial, 3>& correction_table() {
    using R = Rational;
    static const std::array<RationalPolynomial, 3> table{
        // (delta / 4) (delta^2 - 3)
        RationalPolynomial::from_terms({{3, R{1, 4}}, {1, R{-3, 4}}}),
        // -(delta / 96) (13 delta^4 - 88 delta^2 + 195)
        RationalPolynomial::from_terms({{5, R{-13, 96}}, {3, R{88, 96}}, {1, R{-195, 96}}}),
        // (delta / 384) (35 delta^6 - 293 delta^4 + 1025 delta^2 - 1767)
        RationalPolynomial::from_terms(
            {{7, R{35, 384}}, {5, R{-293, 384}}, {3, R{1025, 384}}, {1, R{-1767, 384}}}),
    };
    return table;
}

inline void check_correction_index(int k) {
    if (k < 1 || k > 3) {
        throw domain_error("correction index must be 1, 2 or 3, got " + std::to_string(k));
    }
}

}  // namespace detail

/// d_k as an exact odd polynomial in delta_a.
inline const RationalPolynomial& correction_polynomial(int k) {
    detail::check_correction_index(k);
    return detail::correction_table()[static_cast<std::size_t>(k - 1)];
}

inline double correction_d(int k, double delta_a) {
    return correction_polynomial(k)(delta_a);
}

inline double correction_d_derivative(int k, double delta_a) {
    detail::check_correction_index(k);
    static const std::array<RationalPolynomial, 3> derivatives{
        correction_polynomial(1).derivative(),
        correction_polynomial(2).derivative(),
        correction_polynomial(3).derivative(),
    };
    return derivatives[static_cast<std::size_t>(k - 1)](delta_a);
}

/// Correction values at delta_a and the resulting shift of a.
struct CorrectionSet {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double shift = 0.0;  // sum_{k<=order} d_k / nu^k
};

inline CorrectionSet corrections(DegreesOfFreedom nu, double a, ApproxOrder order) {
    const double delta = standardize(nu, a).delta;
    CorrectionSet set{correction_d(1, delta), correction_d(2, delta), correction_d(3, delta), 0.0};
    const std::array<double, 3> d{set.d1, set.d2, set.d3};
    const double inv = 1.0 / nu.value();
    double shift = 0.0;
    for (int k = to_int(order); k >= 1; --k) {
        shift = (shift + d[static_cast<std::size_t>(k - 1)]) * inv;
    }
    set.shift = shift;
    return set;
}

/// Psi(delta_{a - c}) for the order's shift c; order zero is the plain
/// matched-normal survival Psi(delta_a).
inline double survival_approx(DegreesOfFreedom nu, double a, ApproxOrder order) {
    if (!std::isfinite(a)) {
        throw domain_error("survival_approx: a must be finite");
    }
    const double c = corrections(nu, a, order).shift;
    return normal_sf(standardize(nu, a - c).delta);
}

/// d/da of survival_approx.
inline double survival_approx_derivative(DegreesOfFreedom nu, double a, ApproxOrder order) {
    const double s = nu.scale();
    const double delta = a * s;
    const double inv = 1.0 / nu.value();
    double shift_slope = 0.0;  // d c / d delta
    for (int k = to_int(order); k >= 1; --k) {
        shift_slope = (shift_slope + correction_d_derivative(k, delta)) * inv;
    }
    const double c = corrections(nu, a, order).shift;
    return -normal_pdf((a - c) * s) * s * (1.0 - shift_slope * s);
}

/// Scan region: delta_a in [-w, w] with w = window_delta, further clipped
/// to the bulk B_nu(bulk_eta) when bulk_eta is set. Far outside the bulk the
/// shift c can exceed delta_a itself and the shifted normal tail flips
/// towards 1 for orders 1 and 3.
struct ScanOptions {
    int grid_points = 2001;
    double window_delta = 10.0;
    std::optional<double> bulk_eta = 0.5;
};

/// Half-width in delta of the bulk B_nu(eta): eta sqrt(nu - 2) nu^{-1/4}.
inline double bulk_half_width(DegreesOfFreedom nu, BulkSpec spec) {
    const double n = nu.value();
    return spec.eta() * std::sqrt(n - 2.0) * std::pow(n, -0.25);
}

inline double effective_window(DegreesOfFreedom nu, const ScanOptions& options) {
    double w = options.window_delta;
    if (options.bulk_eta) {
        w = std::min(w, bulk_half_width(nu, BulkSpec{*options.bulk_eta}));
    }
    return w;
}

/// Maximal absolute error of one approximation order at one nu.
struct ErrorScanReport {
    double nu = 0.0;
    ApproxOrder order = ApproxOrder::zero;
    double max_error = 0.0;
    double argmax_a = 0.0;
    int grid_points = 0;
    int refinement_iterations = 0;
    double window_delta = 0.0;  // effective half-width in delta that was scanned
};

inline double approximation_error(DegreesOfFreedom nu, double a, ApproxOrder order) {
    return std::fabs(student_sf_exact(nu, a) - survival_approx(nu, a, order));
}

/// Uniform scan of |S_nu(a) - approximation| over delta_a in the effective
/// window, followed by golden-section refinement in the two grid cells
/// around the best grid point.
inline ErrorScanReport max_error_scan(DegreesOfFreedom nu, ApproxOrder order,
                                      const ScanOptions& options = {}) {
    if (options.grid_points < 101) {
        throw domain_error("max_error_scan: need at least 101 grid points");
    }
    if (!(options.window_delta > 0.0) || !std::isfinite(options.window_delta)) {
        throw domain_error("max_error_scan: window must be positive");
    }
    const double s = nu.scale();
    const double w = effective_window(nu, options);
    const int n = options.grid_points;
    const double step = 2.0 * w / (n - 1);
    auto err_at_delta = [&](double delta) { return approximation_error(nu, delta / s, order); };

    int best_i = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double delta = -w + step * i;
        const double e = err_at_delta(delta);
        if (e > best) {
            best = e;
            best_i = i;
        }
    }
    const double best_delta = -w + step * best_i;
    const double lo = std::max(-w, best_delta - step);
    const double hi = std::min(w, best_delta + step);
    const auto refined = detail::golden_section_maximize(err_at_delta, lo, hi, 1e-10);

    ErrorScanReport report;
    report.nu = nu.value();
    report.order = order;
    report.grid_points = n;
    report.window_delta = w;
    report.refinement_iterations = refined.iterations;
    if (refined.value > best) {
        report.max_error = refined.value;
        report.argmax_a = refined.x / s;
    } else {
        report.max_error = best;
        report.argmax_a = best_delta / s;
    }
    return report;
}

/// A maximum of |d_{i+1}(y)| phi(y) and where it occurs.
struct ExtremalConstant {
    double value = 0.0;
    double argmax = 0.0;
};

/// M_i = max_y |d_{i+1}(y)| phi(y), i in {0, 1, 2}. The objective is even,
/// so y ranges over [0, 10]. Sign changes of d_{i+1} are located on a 1e-3
/// grid and refined by bisection; each interval between consecutive roots
/// holds one hump, maximized by golden section to 1e-9 in y.
inline ExtremalConstant extremal_constant(int i) {
    if (i < 0 || i > 2) {
        throw domain_error("extremal constant index must be 0, 1 or 2");
    }
    const RationalPolynomial& poly = correction_polynomial(i + 1);
    auto objective = [&](double y) { return std::fabs(poly(y)) * normal_pdf(y); };

    constexpr double y_max = 10.0;
    constexpr double grid_step = 1e-3;
    std::vector<double> knots{0.0};
    double prev_y = grid_step;
    double prev_v = poly(prev_y);
    const int steps = static_cast<int>(std::lround(y_max / grid_step));
    for (int j = 2; j <= steps; ++j) {
        const double y = j * grid_step;
        const double v = poly(y);
        if (v == 0.0) {
            knots.push_back(y);
        } else if ((v > 0.0) != (prev_v > 0.0) && prev_v != 0.0) {
            double lo = prev_y;
            double hi = y;
            double f_lo = prev_v;
            while (hi - lo > 1e-15) {
                const double mid = 0.5 * (lo + hi);
                const double fm = poly(mid);
                if (fm == 0.0 || mid == lo || mid == hi) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0.0) == (f_lo > 0.0)) {
                    lo = mid;
                    f_lo = fm;
                } else {
                    hi = mid;
                }
            }
            knots.push_back(0.5 * (lo + hi));
        }
        prev_y = y;
        prev_v = v;
    }
    knots.push_back(y_max);

    ExtremalConstant best;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
        const auto r = detail::golden_section_maximize(objective, knots[j], knots[j + 1], 1e-9);
        if (r.value > best.value) best = {r.value, r.x};
    }
    return best;
}

inline double compute_M(int i) { return extremal_constant(i).value; }

/// The earlier order-0 constant (1/4) sqrt((7 + 5 sqrt 2) / (pi e^{1 + sqrt 2})).
inline double legacy_M0_tilde() {
    using std::numbers::pi;
    using std::numbers::sqrt2;
    return 0.25 * std::sqrt((7.0 + 5.0 * sqrt2) / (pi * std::exp(1.0 + sqrt2)));
}

/// Below this the scanned error is indistinguishable from oracle rounding.
inline constexpr double oracle_noise_floor = 1e-13;

/// Least-squares fit of log(max_error) against log(nu).
struct SlopeFit {
    ApproxOrder order = ApproxOrder::zero;
    std::vector<double> nu_values;
    std::vector<double> errors;
    std::vector<double> excluded_nu;  // scanned error under the noise floor
    double slope = 0.0;
    double intercept = 0.0;
};

inline SlopeFit fit_loglog_slope(ApproxOrder order, std::span<const double> nu_values,
                                 const ScanOptions& options = {}) {
    std::vector<double> distinct(nu_values.begin(), nu_values.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 4) {
        throw domain_error("fit_loglog_slope: need at least 4 distinct nu values");
    }
    for (double nu : nu_values) (void)DegreesOfFreedom{nu};

    // Scans are independent; results are collected in input order.
    std::vector<std::future<ErrorScanReport>> jobs;
    jobs.reserve(nu_values.size());
    for (double nu : nu_values) {
        jobs.push_back(std::async(std::launch::async, [nu, order, options] {
            return max_error_scan(DegreesOfFreedom{nu}, order, options);
        }));
    }

    SlopeFit fit;
    fit.order = order;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const ErrorScanReport report = jobs[j].get();
        if (report.max_error < oracle_noise_floor) {
            fit.excluded_nu.push_back(nu_values[j]);
            continue;
        }
        fit.nu_values.push_back(nu_values[j]);
        fit.errors.push_back(report.max_error);
    }
    if (fit.nu_values.size() < 4) {
        throw convergence_error("fit_loglog_slope: fewer than 4 nu values above the oracle "
                                "noise floor (" +
                                std::to_string(fit.excluded_nu.size()) + " excluded)");
    }

    const double m = static_cast<double>(fit.nu_values.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < fit.nu_values.size(); ++j) {
        const double lx = std::log(fit.nu_values[j]);
        const double ly = std::log(fit.errors[j]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

}  // namespace studentt
