#pragma once
//
// Exact rational numbers and polynomials with rational coefficients, used to
// hold the expansion coefficient tables so that algebraic identities between
// them can be checked without rounding.
//

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace studentt {

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT implicit
    constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }
    constexpr double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend constexpr Rational operator+(Rational a, Rational b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        return {a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_};
    }
    friend constexpr Rational operator-(Rational a) { return {-a.num_, a.den_}; }
    friend constexpr Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend constexpr Rational operator*(Rational a, Rational b) {
        const std::int64_t g1 = std::gcd(a.num_, b.den_);
        const std::int64_t g2 = std::gcd(b.num_, a.den_);
        const std::int64_t n1 = g1 == 0 ? a.num_ : a.num_ / g1;
        const std::int64_t d2 = g1 == 0 ? b.den_ : b.den_ / g1;
        const std::int64_t n2 = g2 == 0 ? b.num_ : b.num_ / g2;
        const std::int64_t d1 = g2 == 0 ? a.den_ : a.den_ / g2;
        return {n1 * n2, d1 * d2};
    }
    friend constexpr Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return a * Rational{b.den_, b.num_};
    }
    friend constexpr bool operator==(Rational a, Rational b) = default;

    friend std::ostream& operator<<(std::ostream& os, Rational r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    constexpr void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Polynomial sum_i c_i y^i with exact rational coefficients.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coefficients)
        : coefficients_(std::move(coefficients)) {
        trim();
    }

    /// Build from (power, coefficient) pairs.
    static RationalPolynomial from_terms(std::initializer_list<std::pair<int, Rational>> terms) {
        std::vector<Rational> c;
        for (const auto& [power, value] : terms) {
            if (power < 0) throw std::invalid_argument("negative power");
            if (c.size() <= static_cast<std::size_t>(power)) c.resize(power + 1);
            c[power] = c[power] + value;
        }
        return RationalPolynomial(std::move(c));
    }

    const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }
    int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }

    Rational coefficient(int power) const {
        if (power < 0 || power > degree()) return Rational{0};
        return coefficients_[power];
    }

    /// Horner evaluation in double precision.
    double operator()(double y) const noexcept {
        double acc = 0.0;
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
            acc = acc * y + it->to_double();
        }
        return acc;
    }

    bool is_even() const noexcept {
        for (std::size_t i = 1; i < coefficients_.size(); i += 2) {
            if (coefficients_[i].num() != 0) return false;
        }
        return true;
    }
    bool is_odd() const noexcept {
        for (std::size_t i = 0; i < coefficients_.size(); i += 2) {
            if (coefficients_[i].num() != 0) return false;
        }
        return true;
    }

    /// Formal derivative.
    RationalPolynomial derivative() const {
        std::vector<Rational> c;
        for (std::size_t i = 1; i < coefficients_.size(); ++i) {
            c.push_back(coefficients_[i] * Rational{static_cast<std::int64_t>(i)});
        }
        return RationalPolynomial(std::move(c));
    }

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> c(std::max(a.coefficients_.size(), b.coefficients_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a.coefficient(static_cast<int>(i)) + b.coefficient(static_cast<int>(i));
        }
        return RationalPolynomial(std::move(c));
    }
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a + b * Rational{-1};
    }
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.coefficients_.empty() || b.coefficients_.empty()) return {};
        std::vector<Rational> c(a.coefficients_.size() + b.coefficients_.size() - 1);
        for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
            for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
                c[i + j] = c[i + j] + a.coefficients_[i] * b.coefficients_[j];
            }
        }
        return RationalPolynomial(std::move(c));
    }
    friend RationalPolynomial operator*(const RationalPolynomial& a, Rational s) {
        std::vector<Rational> c = a.coefficients_;
        for (auto& v : c) v = v * s;
        return RationalPolynomial(std::move(c));
    }
    friend RationalPolynomial operator*(Rational s, const RationalPolynomial& a) { return a * s; }
    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.coefficients_ == b.coefficients_;
    }

    friend std::ostream& operator<<(std::ostream& os, const RationalPolynomial& p) {
        bool first = true;
        for (int i = p.degree(); i >= 0; --i) {
            const Rational c = p.coefficients_[i];
            if (c.num() == 0) continue;
            if (!first) os << " + ";
            os << '(' << c << ")y^" << i;
            first = false;
        }
        if (first) os << '0';
        return os;
    }

private:
    void trim() {
        while (!coefficients_.empty() && coefficients_.back().num() == 0) {
            coefficients_.pop_back();
        }
    }

    std::vector<Rational> coefficients_;
};

}  // namespace studentt
