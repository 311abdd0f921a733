#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace btsfpp {

/// log|Gamma(x)| together with the sign of Gamma(x).
/// At the poles (x = 0, -1, -2, ...) sign is 0 and log_abs is +inf,
/// so that 1/Gamma contributions vanish.
struct SignedLogGamma {
    double log_abs;
    int sign;
};

SignedLogGamma log_gamma_signed(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// log(n!) for n >= 0.
double log_factorial(long long n);

/// x (x-1) ... (x-h+1); empty product = 1 for h = 0.
double falling_factorial(double x, long long h);

/// Generalized binomial coefficient alpha over j for real alpha.
double real_binomial(double alpha, long long j);

/// Parameters of a generalized Wright series sum_k z^k/k! Gamma(a_up+b_up k)/Gamma(a_lo+b_lo k).
/// Only the 1-psi-1 instance (one upper, one lower pair) is supported.
struct WrightSeriesSpec {
    double z = 0.0;
    std::vector<std::pair<double, double>> upper; // (alpha_i, beta_i)
    std::vector<std::pair<double, double>> lower; // (a_j, b_j)
    double rel_tol = 1e-12;
    long long max_terms = 10000;
    bool extended_precision = false; // long-double accumulation, used by test oracles
};

struct SeriesResult {
    double value = 0.0;
    long long terms_used = 0;
    bool converged = false;
    double est_abs_error = 0.0;
};

/// Evaluates the 1-psi-1 generalized Wright function by direct summation.
/// Terms whose lower gamma argument hits a nonpositive integer contribute
/// exactly zero (reciprocal-gamma convention). The stopping rule requires
/// ten consecutive terms below rel_tol * max(|partial sum|, 1), and is armed
/// only after the index where lower-gamma poles can no longer occur.
SeriesResult wright_1psi1(const WrightSeriesSpec& spec);

namespace detail {

/// Same series in the log domain: returns log|value| and sign so callers can
/// combine results whose magnitude exceeds the double range.
struct LogSeriesResult {
    double log_abs;
    int sign;
    long long terms_used;
    bool converged;
    double log_est_error;
};

LogSeriesResult log_wright_1psi1(double z, double a_up, double b_up, double a_lo, double b_lo,
                                 double rel_tol = 1e-14, long long max_terms = 200000);

} // namespace detail

/// Upper incomplete gamma Gamma(a, z) = int_z^inf s^{a-1} e^{-s} ds for z > 0,
/// any real a. Series/continued-fraction for a > 0, downward recurrence with
/// an E1 anchor otherwise.
double upper_incomplete_gamma(double a, double z);

/// Generalized exponential integral E_l(z) = int_1^inf e^{-u z} u^{-l} du, z > 0.
/// Evaluated through z^{l-1} Gamma(1-l, z) with a quadrature fallback.
double gen_exp_integral(double l, double z);

} // namespace btsfpp
