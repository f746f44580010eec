#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "studentt/local_expansion.hpp"

using namespace studentt;

namespace {

using R = Rational;
using Poly = RationalPolynomial;

const std::vector<double> remainder_deltas{0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};

double residual(ExpansionForm form, double nu, double delta) {
    const DegreesOfFreedom dof{nu};
    const double x = unstandardize(dof, {delta});
    return std::fabs(exact_expansion_target(form, dof, x) - expansion_value(form, dof, {delta}, 3));
}

}  // namespace

TEST(Rational, Arithmetic) {
    EXPECT_EQ(R(2, 4), R(1, 2));
    EXPECT_EQ(R(1, -3), R(-1, 3));
    EXPECT_EQ(R(1, 4) + R(1, 12), R(1, 3));
    EXPECT_EQ(R(3, 4) * R(8, 9), R(2, 3));
    EXPECT_EQ(R(3, 4) / R(3, 8), R(2));
    EXPECT_EQ(R(1, 6) - R(1, 6), R(0));
    EXPECT_DOUBLE_EQ(R(11, 8).to_double(), 1.375);
}

TEST(LocalExpansion, QFromPExactIdentities) {
    const Poly& p1 = log_ratio_polynomial(1);
    const Poly& p2 = log_ratio_polynomial(2);
    const Poly& p3 = log_ratio_polynomial(3);
    EXPECT_EQ(ratio_polynomial(1), p1);
    EXPECT_EQ(ratio_polynomial(2), p2 + p1 * p1 * R(1, 2));
    EXPECT_EQ(ratio_polynomial(3), p3 + p1 * p2 + p1 * p1 * p1 * R(1, 6));
}

TEST(LocalExpansion, PolynomialsAreEven) {
    for (int k = 1; k <= 3; ++k) {
        EXPECT_TRUE(log_ratio_polynomial(k).is_even()) << k;
        EXPECT_TRUE(ratio_polynomial(k).is_even()) << k;
    }
    const DegreesOfFreedom nu{37};
    for (double d : {0.3, 1.1, 2.7}) {
        for (int order = 1; order <= 3; ++order) {
            EXPECT_EQ(log_ratio_expansion(nu, {d}, order), log_ratio_expansion(nu, {-d}, order));
            EXPECT_EQ(ratio_expansion(nu, {d}, order), ratio_expansion(nu, {-d}, order));
        }
    }
}

TEST(LocalExpansion, ConstantTerms) {
    const ExpansionTerms log_terms = expansion_terms(ExpansionForm::log_ratio, {0.0});
    EXPECT_DOUBLE_EQ(log_terms.values[0], 0.75);
    EXPECT_DOUBLE_EQ(log_terms.values[1], 1.0);
    EXPECT_DOUBLE_EQ(log_terms.values[2], 11.0 / 8.0);
    EXPECT_EQ(log_terms.remainder_order, 4);
    const ExpansionTerms ratio_terms = expansion_terms(ExpansionForm::ratio, {0.0});
    EXPECT_DOUBLE_EQ(ratio_terms.values[0], 0.75);
    EXPECT_DOUBLE_EQ(ratio_terms.values[1], 41.0 / 32.0);
    EXPECT_DOUBLE_EQ(ratio_terms.values[2], 281.0 / 128.0);

    for (double nu : {5.0, 80.0}) {
        const DegreesOfFreedom dof{nu};
        EXPECT_NEAR(log_ratio_expansion(dof, {0.0}, 3),
                    0.75 / nu + 1.0 / (nu * nu) + 11.0 / (8.0 * nu * nu * nu), 1e-15);
        EXPECT_NEAR(ratio_expansion(dof, {0.0}, 2), 1.0 + 0.75 / nu + 41.0 / (32.0 * nu * nu),
                    1e-15);
    }
}

TEST(LocalExpansion, P1Roots) {
    const Poly& p1 = log_ratio_polynomial(1);
    for (double d2 : {3.0 - std::sqrt(6.0), 3.0 + std::sqrt(6.0)}) {
        EXPECT_NEAR(p1(std::sqrt(d2)), 0.0, 1e-14) << d2;
    }
    EXPECT_EQ(p1.coefficient(4), R(1, 4));
    EXPECT_EQ(p1.coefficient(2), R(-3, 2));
    EXPECT_EQ(p1.coefficient(0), R(3, 4));
}

TEST(LocalExpansion, CloseToExactAtLargeNu) {
    const DegreesOfFreedom nu{1000};
    const double x = unstandardize(nu, {1.0});
    const double diff =
        std::fabs(log_ratio_expansion(nu, {1.0}, 3) - exact_log_density_ratio(nu, x));
    EXPECT_LT(diff, 1e-11);
}

TEST(LocalExpansion, LogRemainderDecaysLikeNuToMinus4) {
    for (double d : remainder_deltas) {
        for (double nu : {64.0, 128.0}) {
            const double r1 = residual(ExpansionForm::log_ratio, nu, d);
            const double r2 = residual(ExpansionForm::log_ratio, 2.0 * nu, d);
            EXPECT_GE(r1 / r2, 12.0) << "delta=" << d << " nu=" << nu;
        }
    }
}

TEST(LocalExpansion, RatioRemainderDecaysLikeNuToMinus4) {
    for (double d : remainder_deltas) {
        for (double nu : {64.0, 128.0}) {
            const double r1 = residual(ExpansionForm::ratio, nu, d);
            const double r2 = residual(ExpansionForm::ratio, 2.0 * nu, d);
            EXPECT_GE(r1 / r2, 12.0) << "delta=" << d << " nu=" << nu;
        }
    }
}

TEST(LocalExpansion, ExpOfLogFormMatchesRatioForm) {
    auto gap = [](double nu) {
        const DegreesOfFreedom dof{nu};
        return std::fabs(std::exp(log_ratio_expansion(dof, {1.5}, 3)) -
                         ratio_expansion(dof, {1.5}, 3));
    };
    EXPECT_GE(gap(200.0) / gap(400.0), 12.0);
}

TEST(LocalExpansion, InvalidOrder) {
    const DegreesOfFreedom nu{10};
    EXPECT_THROW(log_ratio_expansion(nu, {0.0}, 0), domain_error);
    EXPECT_THROW(ratio_expansion(nu, {0.0}, 4), domain_error);
    EXPECT_THROW(log_ratio_polynomial(4), domain_error);
}

TEST(PartialMoment, Examples) {
    EXPECT_NEAR(partial_moment(2, 0.0), 0.5, 1e-15);
    EXPECT_NEAR(partial_moment(4, 0.0), 1.5, 1e-15);
    auto integrand = [](double y) { return oracles::moment_integrand(8, y); };
    EXPECT_NEAR(partial_moment(8, 1.2), oracles::integrate_to_inf(integrand, 1.2), 1e-10);
}

TEST(PartialMoment, MatchesQuadratureForAllK) {
    for (int k = 2; k <= 12; k += 2) {
        for (double d : {-2.0, 0.0, 1.0, 3.0}) {
            auto integrand = [k](double y) { return oracles::moment_integrand(k, y); };
            const double want = oracles::integrate_to_inf(integrand, d);
            EXPECT_NEAR(partial_moment(k, d) / want, 1.0, 1e-11) << "k=" << k << " d=" << d;
        }
    }
}

TEST(PartialMoment, Recurrence) {
    for (int k = 2; k <= 12; k += 2) {
        for (double d : {-2.0, 0.0, 1.0, 3.0}) {
            // Right-hand side formed in extended precision so only the
            // rounding of the two stored moments enters the comparison.
            const long double lower = k == 2 ? normal_sf(d) : partial_moment(k - 2, d);
            const long double rhs =
                std::pow(static_cast<long double>(d), k - 1) *
                    (std::exp(-0.5L * d * d) / std::sqrt(2.0L * std::numbers::pi_v<long double>)) +
                (k - 1) * lower;
            EXPECT_LE(std::fabs(partial_moment(k, d) - rhs), 1e-12L) << "k=" << k << " d=" << d;
        }
    }
}

TEST(PartialMoment, InvalidK) {
    for (int k : {0, 1, 3, 14, -2}) EXPECT_THROW(partial_moment(k, 0.0), domain_error) << k;
}
