#pragma once

#include <stdexcept>
#include <string>

namespace studentt {

/// An argument lies outside the domain of the requested function.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative evaluation (continued fraction, root solve) exceeded its
/// iteration budget. Carries the best estimate reached so far.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best_estimate,
                      double residual, double bracket_lo, double bracket_hi)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          residual_(residual),
          bracket_lo_(bracket_lo),
          bracket_hi_(bracket_hi) {}

    explicit convergence_error(const std::string& what)
        : convergence_error(what, 0.0, 0.0, 0.0, 0.0) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double residual() const noexcept { return residual_; }
    double bracket_lo() const noexcept { return bracket_lo_; }
    double bracket_hi() const noexcept { return bracket_hi_; }

private:
    double best_estimate_;
    double residual_;
    double bracket_lo_;
    double bracket_hi_;
};

/// A requested value is not attainable by the approximation (e.g. a tail
/// probability outside the range the survival approximation covers).
class range_error : public std::range_error {
public:
    range_error(const std::string& what, double attained_lo, double attained_hi)
        : std::range_error(what), attained_lo_(attained_lo), attained_hi_(attained_hi) {}

    double attained_lo() const noexcept { return attained_lo_; }
    double attained_hi() const noexcept { return attained_hi_; }

private:
    double attained_lo_;
    double attained_hi_;
};

}  // namespace studentt
