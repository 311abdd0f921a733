#pragma once

#include <cmath>
#include <limits>

namespace btsfpp {

/// Neumaier-compensated accumulator. The running compensation keeps the
/// rounding error of heavily cancelling sums near one ulp of the largest term.
template <typename Real = double>
class KahanSum {
  public:
    void add(Real x) {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    void scale(Real factor) {
        sum_ *= factor;
        comp_ *= factor;
    }

    Real value() const { return sum_ + comp_; }
    Real compensation() const { return comp_; }

  private:
    Real sum_ = 0;
    Real comp_ = 0;
};

/// Sum of signed terms given as (log magnitude, sign), held as
/// sign * exp(offset) * mantissa so that intermediate terms may exceed the
/// double range as long as the final value does not.
class LogScaledSum {
  public:
    void add(double log_mag, int sign) {
        if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity())
            return;
        if (log_mag > offset_ + 1.0) {
            const double s =
                std::isinf(offset_) ? 0.0 : std::exp(offset_ - log_mag);
            acc_.scale(s);
            offset_ = log_mag;
        }
        acc_.add(sign * std::exp(log_mag - offset_));
    }

    bool empty() const { return std::isinf(offset_); }

    /// log|sum|; sign 0 when the sum is exactly zero.
    double log_abs() const {
        const double v = acc_.value();
        if (v == 0.0)
            return -std::numeric_limits<double>::infinity();
        return offset_ + std::log(std::abs(v));
    }

    int sign() const {
        const double v = acc_.value();
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }

    /// Plain double value; +-inf if out of range.
    double value() const {
        if (empty())
            return 0.0;
        return sign() * std::exp(log_abs());
    }

  private:
    double offset_ = -std::numeric_limits<double>::infinity();
    KahanSum<double> acc_;
};

} // namespace btsfpp
