#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they are used to check.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracles {

/// Brute-force generalized Wright sum in long double with compensated
/// accumulation; nonpositive-integer lower gamma arguments contribute zero.
/// Negative lower arguments go through the reflection formula, a different
/// path from the library's sign-tracked lgamma.
inline long double wright_brute_force(long double z, long double a_up, long double b_up,
                                      long double a_lo, long double b_lo, int terms) {
    const long double pi = 3.14159265358979323846264338327950288L;
    long double sum = 0.0L, comp = 0.0L;
    for (int k = 0; k < terms; ++k) {
        const long double lo = a_lo + b_lo * k;
        if (lo <= 0.0L && lo == std::floor(lo))
            continue;
        const long double up = a_up + b_up * k;
        long double log_abs_gamma_lo;
        int sign = 1;
        if (lo > 0.0L) {
            log_abs_gamma_lo = std::lgamma(lo);
        } else {
            // Gamma(lo) Gamma(1-lo) = pi / sin(pi lo)
            const long double s = std::sin(pi * lo);
            log_abs_gamma_lo = std::log(pi) - std::log(std::abs(s)) - std::lgamma(1.0L - lo);
            sign = s > 0.0L ? 1 : -1;
        }
        const long double term_log = (k == 0 ? 0.0L : k * std::log(std::abs(z))) -
                                     std::lgamma(static_cast<long double>(k) + 1.0L) +
                                     std::lgamma(up) - log_abs_gamma_lo;
        long double term = sign * std::exp(term_log);
        if (z < 0.0L && k % 2 != 0)
            term = -term;
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

/// Adaptive Gauss-Kronrod on a finite interval (different engine from the
/// library's tanh-sinh wrapper).
template <typename F>
double gk_integrate(const F& f, double a, double b, double tol = 1e-12) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

/// Integral over (0, inf) with possible endpoint singularity at 0.
template <typename F>
double integrate_zero_to_inf(const F& f, double tol = 1e-12) {
    boost::math::quadrature::tanh_sinh<double> near;
    boost::math::quadrature::exp_sinh<double> far;
    const auto shifted = [&f](double v) { return f(1.0 + v); };
    return near.integrate(f, 0.0, 1.0, tol) + far.integrate(shifted, tol);
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

/// KS critical value at the 1% level.
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
    return 1.628 * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

/// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracles
