#include "btsfpp/process.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "btsfpp/accumulators.hpp"
#include "btsfpp/errors.hpp"
#include "btsfpp/special_functions.hpp"

namespace btsfpp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ProcessParams::ProcessParams(double alpha_, double theta_, double lambda1_, double lambda2_)
    : alpha(alpha_), theta(theta_), lambda1(lambda1_), lambda2(lambda2_) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("ProcessParams: alpha must lie in (0,1]");
    if (!(theta >= 0.0))
        throw std::invalid_argument("ProcessParams: theta must be >= 0");
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("ProcessParams: rates must be positive");
}

BivariateCount::BivariateCount(long long k1_, long long k2_) : k1(k1_), k2(k2_) {
    if (k1 < 0 || k2 < 0)
        throw std::invalid_argument("BivariateCount: counts must be nonnegative");
}

double bivariate_poisson_pmf(double lambda1, double lambda2, const BivariateCount& k, double s) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("bivariate_poisson_pmf: rates must be positive");
    if (!(s >= 0.0))
        throw std::domain_error("bivariate_poisson_pmf: s must be nonnegative");
    if (s == 0.0)
        return k.total() == 0 ? 1.0 : 0.0;
    const double log_p = k.k1 * std::log(lambda1) + k.k2 * std::log(lambda2) -
                         log_factorial(k.k1) - log_factorial(k.k2) +
                         static_cast<double>(k.total()) * std::log(s) - (lambda1 + lambda2) * s;
    return std::exp(log_p);
}

namespace detail {

double thinning_factor(double lambda1, double lambda2, const BivariateCount& k) {
    const double lam = lambda1 + lambda2;
    return std::exp(log_factorial(k.total()) - log_factorial(k.k1) - log_factorial(k.k2) +
                    k.k1 * std::log(lambda1 / lam) + k.k2 * std::log(lambda2 / lam));
}

double total_count_pmf_series(double lambda, double alpha, double theta, long long h, double t) {
    if (!(t > 0.0))
        throw std::domain_error("pmf series: t must be positive");
    const double z = -std::pow(lambda, alpha) * t;
    LogScaledSum outer;
    const double log_ratio = theta > 0.0 ? std::log(theta / lambda) : -kInf;
    const double log_tol = std::log(1e-14);
    int small_run = 0;
    long long used = 0;
    bool converged = false;
    for (long long i = 0; i < 10000; ++i) {
        const auto w = detail::log_wright_1psi1(z, 1.0, alpha,
                                                1.0 - static_cast<double>(h + i), alpha);
        if (!w.converged)
            throw convergence_error("pmf series: inner Wright series did not converge",
                                    outer.value(), w.terms_used, std::exp(w.log_est_error));
        const double log_term =
            (i == 0 ? 0.0 : static_cast<double>(i) * log_ratio) - log_factorial(i) + w.log_abs;
        outer.add(log_term, w.sign);
        ++used;
        if (theta == 0.0) {
            converged = true;
            break;
        }
        const double scale = std::max(outer.empty() ? -kInf : outer.log_abs(), 0.0);
        if (w.sign == 0 || log_term < log_tol + scale) {
            if (++small_run >= 10) {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if (!converged)
        throw convergence_error("pmf series: outer tempering series did not converge",
                                outer.value(), used, 0.0);
    if (outer.sign() == 0)
        return 0.0;
    const int parity = (h % 2 == 0) ? 1 : -1;
    const double value = outer.log_abs() + t * std::pow(theta, alpha) - log_factorial(h);
    return parity * outer.sign() * std::exp(value);
}

double total_count_pmf_tilted(double lambda, double alpha, double theta, long long h, double t) {
    if (!(t > 0.0))
        throw std::domain_error("pmf series: t must be positive");
    const double tempered = lambda + theta;
    const double z = -std::pow(tempered, alpha) * t;
    const auto w = detail::log_wright_1psi1(z, 1.0, alpha, 1.0 - static_cast<double>(h), alpha);
    if (!w.converged)
        throw convergence_error("pmf series (tilted): Wright series did not converge", 0.0,
                                w.terms_used, std::exp(w.log_est_error));
    if (w.sign == 0)
        return 0.0;
    const int parity = (h % 2 == 0) ? 1 : -1;
    const double log_value = w.log_abs + t * std::pow(theta, alpha) +
                             static_cast<double>(h) * std::log(lambda / tempered) -
                             log_factorial(h);
    return parity * w.sign * std::exp(log_value);
}

double hoppe_derivative(double alpha, double theta, double t, double u, long long h) {
    const double base = u + theta;
    const double theta_a = std::pow(theta, alpha);
    const double psi = std::pow(base, alpha) - theta_a;
    KahanSum<double> acc;
    for (long long k = 0; k <= h; ++k) {
        const double log_tk = k * std::log(t) - log_factorial(k);
        double binom_kj = 1.0; // C(k, j)
        for (long long j = 0; j <= k; ++j) {
            double binom_ji = 1.0; // C(j, i)
            KahanSum<double> inner;
            for (long long i = 0; i <= j; ++i) {
                inner.add(binom_ji * falling_factorial(alpha * static_cast<double>(i), h) *
                          std::pow(base, alpha * static_cast<double>(i) - static_cast<double>(h)) *
                          std::pow(-theta_a, static_cast<double>(j - i)));
                binom_ji *= static_cast<double>(j - i) / static_cast<double>(i + 1);
            }
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc.add(binom_kj * sign * std::exp(log_tk) * std::pow(psi, static_cast<double>(k - j)) *
                    inner.value());
            binom_kj *= static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
    }
    return std::exp(-t * psi) * acc.value();
}

double total_count_pmf_derivative(double lambda, double alpha, double theta, long long h,
                                  double t) {
    if (!(t > 0.0))
        throw std::domain_error("pmf derivative route: t must be positive");
    if (h > kDerivativeRouteCap) {
        std::ostringstream msg;
        msg << "pmf derivative route: h = " << h << " exceeds the cap " << kDerivativeRouteCap;
        throw std::invalid_argument(msg.str());
    }
    const double d = hoppe_derivative(alpha, theta, t, lambda, h);
    const int parity = (h % 2 == 0) ? 1 : -1;
    const double scale = std::exp(h * std::log(lambda) - log_factorial(h));
    return scale * parity * d;
}

} // namespace detail

namespace {

double total_count_pmf_route(double lambda, double alpha, double theta, long long h, double t,
                             PmfRoute route) {
    switch (route) {
    case PmfRoute::wright:
        return detail::total_count_pmf_series(lambda, alpha, theta, h, t);
    case PmfRoute::derivative:
        return detail::total_count_pmf_derivative(lambda, alpha, theta, h, t);
    case PmfRoute::automatic:
        if (h <= 10)
            return detail::total_count_pmf_derivative(lambda, alpha, theta, h, t);
        return detail::total_count_pmf_tilted(lambda, alpha, theta, h, t);
    }
    throw std::logic_error("unknown pmf route");
}

} // namespace

double btsfpp_pmf_wright(const ProcessParams& p, const BivariateCount& k, double t) {
    return detail::thinning_factor(p.lambda1, p.lambda2, k) *
           detail::total_count_pmf_series(p.total_rate(), p.alpha, p.theta, k.total(), t);
}

double btsfpp_pmf_derivative(const ProcessParams& p, const BivariateCount& k, double t) {
    return detail::thinning_factor(p.lambda1, p.lambda2, k) *
           detail::total_count_pmf_derivative(p.total_rate(), p.alpha, p.theta, k.total(), t);
}

double btsfpp_pmf(const ProcessParams& p, const BivariateCount& k, double t, PmfRoute route) {
    return detail::thinning_factor(p.lambda1, p.lambda2, k) *
           total_count_pmf_route(p.total_rate(), p.alpha, p.theta, k.total(), t, route);
}

double tsfpp_pmf(double lambda, double alpha, double theta, long long k, double t) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("tsfpp_pmf: lambda must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0) || !(theta >= 0.0))
        throw std::invalid_argument("tsfpp_pmf: invalid alpha or theta");
    if (k < 0)
        throw std::invalid_argument("tsfpp_pmf: k must be nonnegative");
    return detail::total_count_pmf_series(lambda, alpha, theta, k, t);
}

double total_count_pmf(const ProcessParams& p, long long h, double t, PmfRoute route) {
    if (h < 0)
        throw std::invalid_argument("total_count_pmf: h must be nonnegative");
    return total_count_pmf_route(p.total_rate(), p.alpha, p.theta, h, t, route);
}

double subordinated_count_pmf(const SubordinatorSpec& spec, double lambda, long long k, double t) {
    if (!(lambda > 0.0) || k < 0)
        throw std::invalid_argument("subordinated_count_pmf: invalid lambda or k");
    if (!(t > 0.0))
        throw std::domain_error("subordinated_count_pmf: t must be positive");
    switch (spec.kind()) {
    case SubordinatorKind::tempered_stable:
    case SubordinatorKind::stable:
        if (k <= 10)
            return detail::total_count_pmf_derivative(lambda, spec.alpha(), spec.theta(), k, t);
        return detail::total_count_pmf_tilted(lambda, spec.alpha(), spec.theta(), k, t);
    case SubordinatorKind::gamma: {
        // S(t) ~ Gamma(shape t, rate), so the count is negative binomial.
        const double st = spec.shape() * t;
        const double log_p = log_gamma(static_cast<double>(k) + st) - log_gamma(st) - log_factorial(k) +
                             st * std::log(spec.rate() / (spec.rate() + lambda)) +
                             k * std::log(lambda / (spec.rate() + lambda));
        return std::exp(log_p);
    }
    case SubordinatorKind::deterministic: {
        const double mean = lambda * spec.drift() * t;
        return std::exp(k * std::log(mean) - mean - log_factorial(k));
    }
    }
    throw std::logic_error("subordinated_count_pmf: unknown variant");
}

double btsfpp_pgf(const ProcessParams& p, double u1, double u2, double t) {
    if (!(u1 >= 0.0 && u1 <= 1.0 && u2 >= 0.0 && u2 <= 1.0))
        throw std::domain_error("btsfpp_pgf: (u1,u2) must lie in [0,1]^2");
    if (!(t >= 0.0))
        throw std::domain_error("btsfpp_pgf: t must be nonnegative");
    const double w = p.lambda1 * (1.0 - u1) + p.lambda2 * (1.0 - u2) + p.theta;
    return std::exp(-t * (std::pow(w, p.alpha) - std::pow(p.theta, p.alpha)));
}

double pgf_ode_residual(const ProcessParams& p, double u1, double u2, double t, double step) {
    if (!(step > 0.0) || !(t > step))
        throw std::domain_error("pgf_ode_residual: requires t > step > 0");
    const double dG =
        (btsfpp_pgf(p, u1, u2, t + step) - btsfpp_pgf(p, u1, u2, t - step)) / (2.0 * step);
    const double w = p.lambda1 * (1.0 - u1) + p.lambda2 * (1.0 - u2) + p.theta;
    const double coeff = std::pow(w, p.alpha) - std::pow(p.theta, p.alpha);
    return std::abs(dG + coeff * btsfpp_pgf(p, u1, u2, t));
}

double pmf_pde_residual(const ProcessParams& p, const BivariateCount& k, double t, double step) {
    if (!(step > 0.0) || !(t > step))
        throw std::domain_error("pmf_pde_residual: requires t > step > 0");
    const double lam = p.total_rate();
    const long long h = k.total();
    // Fractional operator expansion in backward shifts; j > h annihilates the
    // lattice point, so the binomial series truncates exactly.
    // The pgf derivation fixes the expansion base to (1 + theta/Lambda).
    KahanSum<double> rhs;
    for (long long j = 0; j <= h; ++j) {
        const double cj = real_binomial(p.alpha, j) *
                          std::pow(1.0 + p.theta / lam, p.alpha - static_cast<double>(j)) *
                          ((j % 2 == 0) ? 1.0 : -1.0) / std::pow(lam, static_cast<double>(j));
        double multinom = 1.0; // j!/(r1! r2!) built incrementally over r1
        KahanSum<double> shift_sum;
        for (long long r1 = 0; r1 <= j; ++r1) {
            const long long r2 = j - r1;
            if (r1 <= k.k1 && r2 <= k.k2) {
                shift_sum.add(multinom * std::pow(p.lambda1, static_cast<double>(r1)) *
                              std::pow(p.lambda2, static_cast<double>(r2)) *
                              btsfpp_pmf(p, BivariateCount(k.k1 - r1, k.k2 - r2), t));
            }
            multinom *= static_cast<double>(j - r1) / static_cast<double>(r1 + 1);
        }
        rhs.add(cj * shift_sum.value());
    }
    const double theta_term =
        std::pow(p.theta / lam, p.alpha) * btsfpp_pmf(p, k, t);
    const double operator_value = -std::pow(lam, p.alpha) * (rhs.value() - theta_term);
    const double dq = (btsfpp_pmf(p, k, t + step) - btsfpp_pmf(p, k, t - step)) / (2.0 * step);
    return std::abs(dq - operator_value);
}

double levy_measure_mass(const ProcessParams& p, const BivariateCount& k, LevyBase base) {
    const long long h = k.total();
    if (h == 0)
        throw std::domain_error("levy_measure_mass: k must differ from (0,0)");
    if (p.alpha == 1.0) {
        // Unit drift clock: only the two unit jumps carry mass.
        if (h != 1)
            return 0.0;
        return k.k1 == 1 ? p.lambda1 : p.lambda2;
    }
    const double base_value =
        base == LevyBase::derived ? p.theta + p.total_rate() : p.theta + static_cast<double>(h);
    if (h == 1) // Gamma(1-alpha)/Gamma(1-alpha) cancels exactly
        return (k.k1 == 1 ? p.lambda1 : p.lambda2) * p.alpha * std::pow(base_value, p.alpha - 1.0);
    const double log_mass = k.k1 * std::log(p.lambda1) + k.k2 * std::log(p.lambda2) -
                            log_factorial(k.k1) - log_factorial(k.k2) + std::log(p.alpha) +
                            log_gamma(static_cast<double>(h) - p.alpha) - log_gamma(1.0 - p.alpha) +
                            (p.alpha - static_cast<double>(h)) * std::log(base_value);
    return std::exp(log_mass);
}

double count_jump_mass(const SubordinatorSpec& spec, double lambda1, double lambda2,
                       const BivariateCount& k) {
    const long long h = k.total();
    if (h == 0)
        throw std::domain_error("count_jump_mass: k must differ from (0,0)");
    const double lam = lambda1 + lambda2;
    switch (spec.kind()) {
    case SubordinatorKind::tempered_stable:
    case SubordinatorKind::stable: {
        const ProcessParams p(spec.alpha(), spec.theta(), lambda1, lambda2);
        return levy_measure_mass(p, k);
    }
    case SubordinatorKind::gamma: {
        const double log_mass = k.k1 * std::log(lambda1) + k.k2 * std::log(lambda2) -
                                log_factorial(k.k1) - log_factorial(k.k2) + std::log(spec.shape()) +
                                log_gamma(static_cast<double>(h)) -
                                static_cast<double>(h) * std::log(spec.rate() + lam);
        return std::exp(log_mass);
    }
    case SubordinatorKind::deterministic:
        if (h != 1)
            return 0.0;
        return spec.drift() * (k.k1 == 1 ? lambda1 : lambda2);
    }
    throw std::logic_error("count_jump_mass: unknown variant");
}

double count_jump_mass_total(const SubordinatorSpec& spec, double lambda1, double lambda2,
                             long long h) {
    if (h < 1)
        throw std::domain_error("count_jump_mass_total: h must be >= 1");
    const double lam = lambda1 + lambda2;
    switch (spec.kind()) {
    case SubordinatorKind::tempered_stable:
    case SubordinatorKind::stable: {
        if (h == 1)
            return lam * spec.alpha() * std::pow(spec.theta() + lam, spec.alpha() - 1.0);
        const double log_mass = h * std::log(lam) - log_factorial(h) + std::log(spec.alpha()) +
                                log_gamma(static_cast<double>(h) - spec.alpha()) -
                                log_gamma(1.0 - spec.alpha()) +
                                (spec.alpha() - static_cast<double>(h)) *
                                    std::log(spec.theta() + lam);
        return std::exp(log_mass);
    }
    case SubordinatorKind::gamma: {
        const double log_mass = h * std::log(lam) - log_factorial(h) + std::log(spec.shape()) +
                                log_gamma(static_cast<double>(h)) -
                                static_cast<double>(h) * std::log(spec.rate() + lam);
        return std::exp(log_mass);
    }
    case SubordinatorKind::deterministic:
        return h == 1 ? spec.drift() * lam : 0.0;
    }
    throw std::logic_error("count_jump_mass_total: unknown variant");
}

double wright_exponential_identity_residual(const ProcessParams& p, double u, double t) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("wright_exponential_identity_residual: u must lie in [0,1]");
    if (!(t > 0.0))
        throw std::domain_error("wright_exponential_identity_residual: t must be positive");
    const double lam = p.total_rate();
    const double closed =
        std::exp(-t * (std::pow(lam * (1.0 - u) + p.theta, p.alpha) - std::pow(p.theta, p.alpha)));
    KahanSum<double> series;
    double cumulative = 0.0;
    double uk = 1.0;
    for (long long k = 0; k < 4000; ++k) {
        const double pk = total_count_pmf(p, k, t);
        cumulative += pk;
        series.add(uk * pk);
        uk *= u;
        // remaining mass is damped by u^{k+1}; stop once the bound is negligible
        if (uk * (1.0 - std::min(cumulative, 1.0)) < 1e-14 && (u < 1.0 || cumulative > 1.0 - 1e-12))
            break;
        if (u == 0.0)
            break;
    }
    return std::abs(closed - series.value());
}

TailCutoff tail_cutoff_status(const ProcessParams& p, double t, double eps, long long hard_cap) {
    if (!(eps > 0.0))
        throw std::invalid_argument("tail_cutoff: eps must be positive");
    TailCutoff result;
    KahanSum<double> cum;
    for (long long h = 0; h <= hard_cap; ++h) {
        const double mass = total_count_pmf(p, h, t);
        cum.add(mass);
        result.cutoff = h;
        result.cumulative = cum.value();
        if (result.cumulative >= 1.0 - eps && mass < eps / 10.0) {
            result.reached = true;
            break;
        }
    }
    return result;
}

long long tail_cutoff(const ProcessParams& p, double t, double eps, long long hard_cap) {
    const TailCutoff status = tail_cutoff_status(p, t, eps, hard_cap);
    if (!status.reached) {
        std::ostringstream msg;
        msg << "tail_cutoff: cumulative mass " << status.cumulative << " after " << status.cutoff
            << " diagonals did not reach 1 - " << eps;
        throw convergence_error(msg.str(), status.cumulative, status.cutoff, eps);
    }
    return status.cutoff;
}

namespace {

SubordinatorSpec clock_of(const ProcessParams& p) {
    if (p.alpha == 1.0)
        return SubordinatorSpec::deterministic(1.0); // psi(u) = u: the clock is time itself
    return SubordinatorSpec::tempered_stable(p.alpha, p.theta);
}

} // namespace

BivariateCount simulate_counts(const ProcessParams& p, double t, RngStream& rng) {
    if (!(t > 0.0))
        throw std::domain_error("simulate_counts: t must be positive");
    const double s = sample_increment(clock_of(p), t, rng);
    const long long n1 = std::poisson_distribution<long long>(p.lambda1 * s)(rng.engine());
    const long long n2 = std::poisson_distribution<long long>(p.lambda2 * s)(rng.engine());
    return {n1, n2};
}

CountPath simulate_path(const ProcessParams& p, const PathGrid& grid, RngStream& rng) {
    CountPath path;
    path.times = grid.times();
    path.operational_times = sample_path(clock_of(p), grid, rng);
    path.counts.reserve(path.times.size());
    path.counts.emplace_back(0, 0);
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        const double ds = path.operational_times[i] - path.operational_times[i - 1];
        long long d1 = 0, d2 = 0;
        if (ds > 0.0) {
            d1 = std::poisson_distribution<long long>(p.lambda1 * ds)(rng.engine());
            d2 = std::poisson_distribution<long long>(p.lambda2 * ds)(rng.engine());
        }
        path.counts.emplace_back(path.counts.back().k1 + d1, path.counts.back().k2 + d2);
    }
    return path;
}

std::vector<CountPath::Jump> CountPath::jumps() const {
    std::vector<Jump> out;
    for (std::size_t i = 1; i < counts.size(); ++i) {
        const long long d1 = counts[i].k1 - counts[i - 1].k1;
        const long long d2 = counts[i].k2 - counts[i - 1].k2;
        if (d1 != 0 || d2 != 0)
            out.push_back({times[i], d1, d2});
    }
    return out;
}

} // namespace btsfpp
