#include "btsfpp/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "btsfpp/accumulators.hpp"
#include "btsfpp/errors.hpp"

namespace btsfpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double lgamma_threadsafe(double x) {
#if defined(__unix__) || defined(__APPLE__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

} // namespace

SignedLogGamma log_gamma_signed(double x) {
    if (is_nonpositive_integer(x))
        return {kInf, 0};
    if (x > 0.0)
        return {lgamma_threadsafe(x), 1};
    // Gamma alternates sign between consecutive negative integers.
    const long long n = static_cast<long long>(std::floor(-x));
    const int sign = (n % 2 == 0) ? -1 : 1;
    return {lgamma_threadsafe(x), sign};
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: x must be positive");
    return lgamma_threadsafe(x);
}

double log_factorial(long long n) {
    if (n < 0)
        throw std::invalid_argument("log_factorial: n must be nonnegative");
    return lgamma_threadsafe(static_cast<double>(n) + 1.0);
}

double falling_factorial(double x, long long h) {
    if (h < 0)
        throw std::invalid_argument("falling_factorial: h must be nonnegative");
    double p = 1.0;
    for (long long m = 0; m < h; ++m)
        p *= x - static_cast<double>(m);
    return p;
}

double real_binomial(double alpha, long long j) {
    if (j < 0)
        throw std::invalid_argument("real_binomial: j must be nonnegative");
    double p = 1.0;
    for (long long m = 1; m <= j; ++m)
        p *= (alpha - static_cast<double>(m) + 1.0) / static_cast<double>(m);
    return p;
}

namespace {

// First index past which the lower gamma argument a + b k can no longer hit a
// nonpositive-integer pole; the stopping rule must not fire earlier, because
// the exact-zero terms near the head would otherwise look "converged".
long long pole_guard_index(double a, double b) {
    if (b > 0.0) {
        if (a > 0.0)
            return 0;
        return static_cast<long long>(std::floor(-a / b)) + 1;
    }
    return 0; // b <= 0: poles never stop occurring; rely on term decay alone
}

struct TermLog {
    double log_mag;
    int sign;
};

TermLog wright_term_log(double z, double a_up, double b_up, double a_lo, double b_lo,
                        long long k) {
    const double lo = a_lo + b_lo * static_cast<double>(k);
    const SignedLogGamma glo = log_gamma_signed(lo);
    if (glo.sign == 0)
        return {-kInf, 0}; // reciprocal-gamma convention: term is exactly 0
    const SignedLogGamma gup = log_gamma_signed(a_up + b_up * static_cast<double>(k));
    if (gup.sign == 0)
        throw std::invalid_argument("wright_1psi1: upper gamma argument hit a pole");
    double log_mag;
    if (z == 0.0)
        log_mag = (k == 0) ? gup.log_abs - glo.log_abs : -kInf;
    else
        log_mag = static_cast<double>(k) * std::log(std::abs(z)) - log_factorial(k) +
                  gup.log_abs - glo.log_abs;
    int sign = gup.sign * glo.sign;
    if (z < 0.0 && (k % 2) != 0)
        sign = -sign;
    return {log_mag, sign};
}

template <typename Real>
SeriesResult wright_sum(const WrightSeriesSpec& spec, double a_up, double b_up, double a_lo,
                        double b_lo) {
    KahanSum<Real> acc;
    std::array<double, 10> ring{}; // |term| of the last 10 terms
    int small_run = 0;
    long long k = 0;
    bool converged = false;
    const long long guard = pole_guard_index(a_lo, b_lo);
    for (; k < spec.max_terms; ++k) {
        const TermLog tl = wright_term_log(spec.z, a_up, b_up, a_lo, b_lo, k);
        const double mag = (tl.sign == 0) ? 0.0 : std::exp(tl.log_mag);
        acc.add(static_cast<Real>(tl.sign) * static_cast<Real>(mag));
        ring[static_cast<std::size_t>(k % 10)] = mag;
        const double scale = std::max(std::abs(static_cast<double>(acc.value())), 1.0);
        if (k >= guard && mag < spec.rel_tol * scale) {
            if (++small_run >= 10) {
                ++k;
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    SeriesResult res;
    res.value = static_cast<double>(acc.value());
    res.terms_used = k;
    res.converged = converged;
    double ring_max = 0.0;
    for (double m : ring)
        ring_max = std::max(ring_max, m);
    res.est_abs_error = converged
                            ? std::min(ring_max, spec.rel_tol * std::max(std::abs(res.value), 1.0))
                            : ring_max;
    return res;
}

} // namespace

SeriesResult wright_1psi1(const WrightSeriesSpec& spec) {
    if (spec.upper.size() != 1 || spec.lower.size() != 1)
        throw std::invalid_argument("wright_1psi1: exactly one upper and one lower pair required");
    if (spec.rel_tol <= 0.0 || spec.max_terms < 1)
        throw std::invalid_argument("wright_1psi1: rel_tol must be > 0 and max_terms >= 1");
    const auto [a_up, b_up] = spec.upper[0];
    const auto [a_lo, b_lo] = spec.lower[0];
    if (!(b_lo - b_up > -1.0))
        throw std::invalid_argument("wright_1psi1: convergence condition sum(b)-sum(beta) > -1 violated");
    if (spec.extended_precision)
        return wright_sum<long double>(spec, a_up, b_up, a_lo, b_lo);
    return wright_sum<double>(spec, a_up, b_up, a_lo, b_lo);
}

namespace detail {

LogSeriesResult log_wright_1psi1(double z, double a_up, double b_up, double a_lo, double b_lo,
                                 double rel_tol, long long max_terms) {
    if (!(b_lo - b_up > -1.0))
        throw std::invalid_argument("log_wright_1psi1: convergence condition violated");
    LogScaledSum acc;
    const long long guard = pole_guard_index(a_lo, b_lo);
    const double log_tol = std::log(rel_tol);
    double log_ring_max = -kInf;
    int small_run = 0;
    long long k = 0;
    bool converged = false;
    for (; k < max_terms; ++k) {
        const TermLog tl = wright_term_log(z, a_up, b_up, a_lo, b_lo, k);
        acc.add(tl.log_mag, tl.sign);
        if (k % 10 == 0)
            log_ring_max = -kInf;
        log_ring_max = std::max(log_ring_max, tl.sign == 0 ? -kInf : tl.log_mag);
        const double scale = std::max(acc.empty() ? -kInf : acc.log_abs(), 0.0);
        if (k >= guard && (tl.sign == 0 || tl.log_mag < log_tol + scale)) {
            if (++small_run >= 10) {
                ++k;
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    return {acc.log_abs(), acc.sign(), k, converged, log_ring_max};
}

} // namespace detail

namespace {

// Lower-gamma series, z < a+1: gamma(a,z) = z^a e^-z sum z^n / (a (a+1)...(a+n)).
double lower_gamma_series(double a, double z) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 1000; ++n) {
        term *= z / (a + n);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            return sum * std::exp(-z + a * std::log(z));
    }
    throw convergence_error("lower incomplete gamma series did not converge", sum, 1000, term);
}

// Modified-Lentz continued fraction for Gamma(a, z); reliable for z >= ~1,
// works for a <= 0 as well.
double upper_gamma_cf(double a, double z) {
    const double tiny = 1e-300;
    double b = z + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i <= 2000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return f * std::exp(-z + a * std::log(z));
    }
    throw convergence_error("incomplete gamma continued fraction did not converge", f, 2000, 0.0);
}

// E1(z) for small z via the classical log+power series.
double e1_small(double z) {
    constexpr double euler = 0.57721566490153286060651209008240243;
    double sum = -euler - std::log(z);
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -z / k;
        const double add = -term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

double upper_gamma_nonpositive(double a, double z) {
    // Anchor at a0 in (0,1] (or at a0 = 0 via E1) and recur downward:
    // Gamma(m-1, z) = (Gamma(m, z) - z^{m-1} e^{-z}) / (m-1).
    double a0;
    double g;
    if (a == std::floor(a)) {
        a0 = 0.0;
        g = (z < 1.0) ? e1_small(z) : upper_gamma_cf(0.0, z);
    } else {
        a0 = a - std::floor(a); // in (0,1)
        g = (z < a0 + 1.0) ? std::tgamma(a0) - lower_gamma_series(a0, z) : upper_gamma_cf(a0, z);
    }
    for (double m = a0; m > a + 0.5; m -= 1.0) {
        g = (g - std::exp((m - 1.0) * std::log(z) - z)) / (m - 1.0);
    }
    return g;
}

} // namespace

double upper_incomplete_gamma(double a, double z) {
    if (!(z > 0.0))
        throw std::domain_error("upper_incomplete_gamma: z must be positive");
    if (a > 0.0) {
        if (z < a + 1.0)
            return std::tgamma(a) - lower_gamma_series(a, z);
        return upper_gamma_cf(a, z);
    }
    if (z >= 1.0)
        return upper_gamma_cf(a, z);
    return upper_gamma_nonpositive(a, z);
}

double gen_exp_integral(double l, double z) {
    if (!(z > 0.0))
        throw std::domain_error("gen_exp_integral: z must be positive");
    const double via_gamma = std::exp((l - 1.0) * std::log(z)) * upper_incomplete_gamma(1.0 - l, z);
    if (std::isfinite(via_gamma))
        return via_gamma;
    // Fallback: integrate e^{-u z} u^{-l} over (1, inf) directly.
    boost::math::quadrature::exp_sinh<double> integrator;
    const auto f = [l, z](double v) { return std::exp(-(1.0 + v) * z) * std::pow(1.0 + v, -l); };
    return integrator.integrate(f, 1e-12);
}

} // namespace btsfpp
