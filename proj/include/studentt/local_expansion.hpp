#pragma once
//
// Local expansions of the Student-to-matched-normal density ratio in powers
// of 1/nu, with coefficients that are even polynomials in delta_x, and the
// Gaussian partial moments Psi_k(delta) = int_delta^inf y^k phi(y) dy.
//
// Log form:   log ratio = sum_{k=1..3} nu^{-k} P_k(delta) + O(nu^{-4})
// Ratio form: ratio     = 1 + sum_{k=1..3} nu^{-k} Q_k(delta) + O(nu^{-4})
//
// The expansions are polynomials defined for every finite delta; whether a
// point lies in the bulk where they are uniformly accurate is for the
// caller to check (see in_bulk).
//

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "studentt/errors.hpp"
#include "studentt/rational.hpp"
#include "studentt/special_fn.hpp"
#include "studentt/student_exact.hpp"

namespace studentt {

enum class ExpansionForm { log_ratio, ratio };

namespace detail {

inline void check_expansion_order(int order) {
    if (order < 1 || order > 3) {
        throw domain_error("expansion order must be 1, 2 or 3, got " + std::to_string(order));
    }
}

inline const std::array<RationalPolynomial, 3>& log_ratio_table() {
    using R = Rational;
    static const std::array<RationalPolynomial, 3> table{
        RationalPolynomial::from_terms({{4, R{1, 4}}, {2, R{-3, 2}}, {0, R{3, 4}}}),
        RationalPolynomial::from_terms({{6, R{-1, 6}}, {4, R{5, 4}}, {2, R{-3}}, {0, R{1}}}),
        RationalPolynomial::from_terms(
            {{8, R{1, 8}}, {6, R{-7, 6}}, {4, R{4}}, {2, R{-6}}, {0, R{11, 8}}}),
    };
    return table;
}

inline const std::array<RationalPolynomial, 3>& ratio_table() {
    using R = Rational;
    static const std::array<RationalPolynomial, 3> table{
        RationalPolynomial::from_terms({{4, R{1, 4}}, {2, R{-3, 2}}, {0, R{3, 4}}}),
        RationalPolynomial::from_terms({{8, R{1, 32}},
                                        {6, R{-13, 24}},
                                        {4, R{41, 16}},
                                        {2, R{-33, 8}},
                                        {0, R{41, 32}}}),
        RationalPolynomial::from_terms({{12, R{1, 384}},
                                        {10, R{-17, 192}},
                                        {8, R{127, 128}},
                                        {6, R{-457, 96}},
                                        {4, R{1357, 128}},
                                        {2, R{-651, 64}},
                                        {0, R{281, 128}}}),
    };
    return table;
}

}  // namespace detail

/// Coefficient polynomial of nu^{-k} (k = 1, 2, 3) in the log form (P_k).
inline const RationalPolynomial& log_ratio_polynomial(int k) {
    detail::check_expansion_order(k);
    return detail::log_ratio_table()[static_cast<std::size_t>(k - 1)];
}

/// Coefficient polynomial of nu^{-k} (k = 1, 2, 3) in the ratio form (Q_k).
inline const RationalPolynomial& ratio_polynomial(int k) {
    detail::check_expansion_order(k);
    return detail::ratio_table()[static_cast<std::size_t>(k - 1)];
}

inline const RationalPolynomial& expansion_polynomial(ExpansionForm form, int k) {
    return form == ExpansionForm::log_ratio ? log_ratio_polynomial(k) : ratio_polynomial(k);
}

/// The three coefficient values at a given delta; the neglected remainder
/// is O(nu^{-remainder_order}).
struct ExpansionTerms {
    ExpansionForm form = ExpansionForm::log_ratio;
    std::array<double, 3> values{};
    int remainder_order = 4;
};

inline ExpansionTerms expansion_terms(ExpansionForm form, StandardizedPoint delta) {
    ExpansionTerms terms;
    terms.form = form;
    for (int k = 1; k <= 3; ++k) {
        terms.values[static_cast<std::size_t>(k - 1)] = expansion_polynomial(form, k)(delta.delta);
    }
    return terms;
}

/// sum_{k=1..order} nu^{-k} P_k(delta): approximates
/// log(f_nu(x) / (phi(delta_x) / sqrt(nu / (nu - 2)))).
inline double log_ratio_expansion(DegreesOfFreedom nu, StandardizedPoint delta, int order) {
    detail::check_expansion_order(order);
    const double inv = 1.0 / nu.value();
    double sum = 0.0;
    for (int k = order; k >= 1; --k) {
        sum = (sum + log_ratio_polynomial(k)(delta.delta)) * inv;
    }
    return sum;
}

/// 1 + sum_{k=1..order} nu^{-k} Q_k(delta): approximates the density ratio.
inline double ratio_expansion(DegreesOfFreedom nu, StandardizedPoint delta, int order) {
    detail::check_expansion_order(order);
    const double inv = 1.0 / nu.value();
    double sum = 0.0;
    for (int k = order; k >= 1; --k) {
        sum = (sum + ratio_polynomial(k)(delta.delta)) * inv;
    }
    return 1.0 + sum;
}

inline double expansion_value(ExpansionForm form, DegreesOfFreedom nu, StandardizedPoint delta,
                              int order) {
    return form == ExpansionForm::log_ratio ? log_ratio_expansion(nu, delta, order)
                                            : ratio_expansion(nu, delta, order);
}

/// The exact quantity the chosen expansion approximates, at the original
/// point x.
inline double exact_expansion_target(ExpansionForm form, DegreesOfFreedom nu, double x) {
    return form == ExpansionForm::log_ratio ? exact_log_density_ratio(nu, x)
                                            : exact_density_ratio(nu, x);
}

/// Closed form of Psi_k(delta) = int_delta^inf y^k phi(y) dy for even k:
///   Psi_k(delta) = p_k(delta) phi(delta) + (k - 1)!! Psi(delta),
/// with p_k an odd polynomial.
struct PartialMomentForm {
    std::array<double, 6> odd_coefficients{};  // of delta^1, delta^3, ..., delta^11
    double double_factorial = 0.0;
};

inline const PartialMomentForm& partial_moment_form(int k) {
    static const std::array<PartialMomentForm, 6> forms{{
        {{1, 0, 0, 0, 0, 0}, 1},
        {{3, 1, 0, 0, 0, 0}, 3},
        {{15, 5, 1, 0, 0, 0}, 15},
        {{105, 35, 7, 1, 0, 0}, 105},
        {{945, 315, 63, 9, 1, 0}, 945},
        {{10395, 3465, 693, 99, 11, 1}, 10395},
    }};
    if (k < 2 || k > 12 || k % 2 != 0) {
        throw domain_error("partial_moment: k must be one of 2, 4, ..., 12, got " +
                           std::to_string(k));
    }
    return forms[static_cast<std::size_t>(k / 2 - 1)];
}

inline double partial_moment(int k, double delta) {
    const PartialMomentForm& form = partial_moment_form(k);
    if (!std::isfinite(delta)) {
        throw domain_error("partial_moment: delta must be finite");
    }
    // Extended precision keeps the result within about half an ulp; the two
    // terms cancel by up to a factor of two for negative delta.
    using Wide = long double;
    const Wide d = delta;
    const Wide d2 = d * d;
    Wide poly = 0.0L;
    for (auto it = form.odd_coefficients.rbegin(); it != form.odd_coefficients.rend(); ++it) {
        poly = poly * d2 + static_cast<Wide>(*it);
    }
    poly *= d;
    const Wide pdf = std::exp(-0.5L * d2) / std::sqrt(2.0L * std::numbers::pi_v<Wide>);
    const Wide sf = 0.5L * std::erfc(d / std::numbers::sqrt2_v<Wide>);
    return static_cast<double>(poly * pdf + static_cast<Wide>(form.double_factorial) * sf);
}

}  // namespace studentt
