#pragma once
//
// Exact Student t quantities: density, survival function (incomplete-beta
// route), the standardized coordinate delta_x = x / sqrt(nu / (nu - 2)) and
// the bulk region |delta_x / sqrt(nu - 2)| <= eta nu^{-1/4}.
//

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "studentt/errors.hpp"
#include "studentt/special_fn.hpp"

namespace studentt {

/// Degrees of freedom nu. Real valued; nu > 2 so that the variance
/// nu / (nu - 2) exists.
class DegreesOfFreedom {
public:
    explicit DegreesOfFreedom(double nu) : nu_(nu) {
        if (!std::isfinite(nu) || !(nu > 2.0)) {
            throw domain_error("degrees of freedom must be finite and > 2, got " +
                               std::to_string(nu));
        }
    }
    double value() const noexcept { return nu_; }

    /// nu / (nu - 2)
    double variance() const noexcept { return nu_ / (nu_ - 2.0); }

    /// sqrt((nu - 2) / nu), the factor mapping x to delta_x.
    double scale() const noexcept { return std::sqrt((nu_ - 2.0) / nu_); }

private:
    double nu_;
};

/// delta_x: a point measured in standard deviations of the matched normal.
struct StandardizedPoint {
    double delta = 0.0;
};

/// Bulk half-width parameter eta in (0, 1).
class BulkSpec {
public:
    explicit BulkSpec(double eta) : eta_(eta) {
        if (!(eta > 0.0 && eta < 1.0)) {
            throw domain_error("bulk eta must lie in (0, 1)");
        }
    }
    double eta() const noexcept { return eta_; }

private:
    double eta_;
};

inline StandardizedPoint standardize(DegreesOfFreedom nu, double x) {
    return {x * nu.scale()};
}

inline double unstandardize(DegreesOfFreedom nu, StandardizedPoint p) {
    return p.delta / nu.scale();
}

/// log f_nu(x). The gamma ratio goes through log_gamma_difference and the
/// kernel through log1p, so large nu neither overflows nor cancels.
inline double student_log_pdf(DegreesOfFreedom nu, double x) {
    const double n = nu.value();
    return log_gamma_difference(0.5 * n, 0.5) - 0.5 * std::log(n * std::numbers::pi) -
           0.5 * (n + 1.0) * std::log1p(x * x / n);
}

inline double student_pdf(DegreesOfFreedom nu, double x) {
    if (!std::isfinite(x)) {
        throw domain_error("student_pdf: x must be finite");
    }
    return std::exp(student_log_pdf(nu, x));
}

/// Exact log of f_nu(x) / (phi(delta_x) / sqrt(nu / (nu - 2))), the
/// Student-to-matched-normal density ratio.
inline double exact_log_density_ratio(DegreesOfFreedom nu, double x) {
    const double delta = standardize(nu, x).delta;
    return student_log_pdf(nu, x) + 0.5 * std::log(nu.variance()) + 0.5 * delta * delta +
           detail::half_log_two_pi;
}

inline double exact_density_ratio(DegreesOfFreedom nu, double x) {
    return std::exp(exact_log_density_ratio(nu, x));
}

/// S_nu(a) = P(X > a) through 1/2 I_{nu/(nu+a^2)}(nu/2, 1/2) for a >= 0 and
/// the complement for a < 0.
inline double student_sf_exact(DegreesOfFreedom nu, double a, const Accuracy& acc = {}) {
    if (!std::isfinite(a)) {
        throw domain_error("student_sf_exact: a must be finite");
    }
    acc.validate();
    const double n = nu.value();
    const double t = std::fabs(a);
    const double denom = n + t * t;
    const double tail =
        0.5 * detail::reg_inc_beta_xy(n / denom, t * t / denom, 0.5 * n, 0.5, acc);
    return a >= 0.0 ? tail : 1.0 - tail;
}

/// Membership in B_nu(eta). The boundary is included, up to a few ulps of
/// rounding in delta_x.
inline bool in_bulk(DegreesOfFreedom nu, double x, BulkSpec spec) {
    constexpr double slack = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();
    const double n = nu.value();
    const double delta = standardize(nu, x).delta;
    return std::fabs(delta / std::sqrt(n - 2.0)) <= spec.eta() * std::pow(n, -0.25) * slack;
}

}  // namespace studentt
