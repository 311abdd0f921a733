#include "btsfpp/shock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "btsfpp/accumulators.hpp"
#include "btsfpp/errors.hpp"
#include "btsfpp/quadrature.hpp"
#include "btsfpp/special_functions.hpp"

namespace btsfpp {

// ---------------------------------------------------------------------------
// Mixing laws
// ---------------------------------------------------------------------------

MixingLaw MixingLaw::uniform() {
    MixingLaw g;
    g.kind_ = MixingKind::uniform;
    return g;
}

MixingLaw MixingLaw::truncated_lomax(double a, double b) {
    if (!(a > 0.0) || !(b > -1.0) || b == 0.0)
        throw std::invalid_argument("truncated_lomax: requires a > 0, b > -1, b != 0");
    MixingLaw g;
    g.kind_ = MixingKind::truncated_lomax;
    g.a_ = a;
    g.b_ = b;
    return g;
}

MixingLaw MixingLaw::truncated_weibull(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("truncated_weibull: requires a > 0, b > 0");
    if (!(c < 1.0))
        throw std::invalid_argument("truncated_weibull: support (max(0,c), 1) must be nonempty");
    MixingLaw g;
    g.kind_ = MixingKind::truncated_weibull;
    g.a_ = a;
    g.b_ = b;
    g.c_ = c;
    return g;
}

MixingLaw MixingLaw::point_mass(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("point_mass: p must lie in (0,1]");
    MixingLaw g;
    g.kind_ = MixingKind::point_mass;
    g.point_ = p;
    return g;
}

double MixingLaw::support_lower() const {
    switch (kind_) {
    case MixingKind::uniform:
    case MixingKind::truncated_lomax:
        return 0.0;
    case MixingKind::truncated_weibull:
        return std::max(0.0, c_);
    case MixingKind::point_mass:
        return point_;
    }
    throw std::logic_error("MixingLaw: unknown kind");
}

double MixingLaw::density(double p) const {
    if (!(p > 0.0 && p < 1.0))
        return 0.0;
    switch (kind_) {
    case MixingKind::uniform:
        return 1.0;
    case MixingKind::truncated_lomax:
        // a b (1+ap)^{-(b+1)} / (1 - (1+a)^{-b}); both factors flip sign for b < 0
        return a_ * b_ * std::pow(1.0 + a_ * p, -(b_ + 1.0)) /
               (1.0 - std::pow(1.0 + a_, -b_));
    case MixingKind::truncated_weibull: {
        if (p <= c_)
            return 0.0;
        const double lower = support_lower();
        const double norm = std::exp(-std::pow((lower - c_) / a_, b_)) -
                            std::exp(-std::pow((1.0 - c_) / a_, b_));
        const double x = (p - c_) / a_;
        return b_ / a_ * std::pow(x, b_ - 1.0) * std::exp(-std::pow(x, b_)) / norm;
    }
    case MixingKind::point_mass:
        throw std::logic_error("MixingLaw: point mass has no density");
    }
    throw std::logic_error("MixingLaw: unknown kind");
}

double MixingLaw::sample(RngStream& rng) const {
    const double u = rng.uniform();
    switch (kind_) {
    case MixingKind::uniform:
        return u;
    case MixingKind::truncated_lomax: {
        const double norm = 1.0 - std::pow(1.0 + a_, -b_);
        return (std::pow(1.0 - u * norm, -1.0 / b_) - 1.0) / a_;
    }
    case MixingKind::truncated_weibull: {
        const double lower = support_lower();
        const double hi = std::exp(-std::pow((lower - c_) / a_, b_));
        const double lo = std::exp(-std::pow((1.0 - c_) / a_, b_));
        const double w = lo + u * (hi - lo);
        return c_ + a_ * std::pow(-std::log(w), 1.0 / b_);
    }
    case MixingKind::point_mass:
        return point_;
    }
    throw std::logic_error("MixingLaw: unknown kind");
}

// ---------------------------------------------------------------------------
// Threshold distributions
// ---------------------------------------------------------------------------

ThresholdDist ThresholdDist::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("geometric threshold: p must lie in (0,1]");
    ThresholdDist d;
    d.kind_ = ThresholdKind::geometric;
    d.p_ = p;
    return d;
}

ThresholdDist ThresholdDist::discrete_exponential() {
    ThresholdDist d;
    d.kind_ = ThresholdKind::discrete_exponential;
    return d;
}

ThresholdDist ThresholdDist::yule_simon(double rho) {
    if (!(rho > 0.0))
        throw std::invalid_argument("yule_simon threshold: rho must be positive");
    ThresholdDist d;
    d.kind_ = ThresholdKind::yule_simon;
    d.rho_ = rho;
    return d;
}

ThresholdDist ThresholdDist::deterministic(long long m) {
    if (m < 1)
        throw std::invalid_argument("deterministic threshold: m must be >= 1");
    ThresholdDist d;
    d.kind_ = ThresholdKind::deterministic;
    d.m_ = m;
    return d;
}

ThresholdDist ThresholdDist::empirical(std::vector<double> pmf) {
    if (pmf.empty())
        throw std::invalid_argument("empirical threshold: pmf must be nonempty");
    double sum = 0.0;
    for (double q : pmf) {
        if (!(q >= 0.0))
            throw std::invalid_argument("empirical threshold: pmf entries must be nonnegative");
        sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("empirical threshold: pmf must sum to 1 within 1e-12");
    ThresholdDist d;
    d.kind_ = ThresholdKind::empirical;
    d.pmf_ = std::move(pmf);
    d.survival_.resize(d.pmf_.size() + 1);
    d.survival_[0] = 1.0;
    for (std::size_t k = 0; k < d.pmf_.size(); ++k)
        d.survival_[k + 1] = std::max(0.0, d.survival_[k] - d.pmf_[k]);
    return d;
}

ThresholdDist ThresholdDist::geometric_mixture(MixingLaw law) {
    ThresholdDist d;
    d.kind_ = ThresholdKind::geometric_mixture;
    d.mixing_ = law;
    return d;
}

double ThresholdDist::survival(long long k) const {
    if (k < 0)
        throw std::domain_error("threshold survival: k must be nonnegative");
    if (k == 0)
        return 1.0;
    switch (kind_) {
    case ThresholdKind::geometric:
        return std::pow(1.0 - p_, static_cast<double>(k));
    case ThresholdKind::discrete_exponential:
        return std::exp(-static_cast<double>(k));
    case ThresholdKind::yule_simon:
        // qbar_k = k B(k, rho+1)
        return std::exp(std::log(static_cast<double>(k)) + log_gamma(static_cast<double>(k)) +
                        log_gamma(rho_ + 1.0) - log_gamma(static_cast<double>(k) + rho_ + 1.0));
    case ThresholdKind::deterministic:
        return k < m_ ? 1.0 : 0.0;
    case ThresholdKind::empirical:
        return k < static_cast<long long>(survival_.size()) ? survival_[static_cast<std::size_t>(k)]
                                                            : 0.0;
    case ThresholdKind::geometric_mixture: {
        if (mixing_.kind() == MixingKind::point_mass)
            return std::pow(1.0 - mixing_.point(), static_cast<double>(k));
        const auto f = [this, k](double p) {
            return std::pow(1.0 - p, static_cast<double>(k)) * mixing_.density(p);
        };
        return integrate_finite(f, mixing_.support_lower(), 1.0, 1e-12);
    }
    }
    throw std::logic_error("ThresholdDist: unknown kind");
}

double ThresholdDist::pmf(long long k) const {
    if (k < 1)
        throw std::domain_error("threshold pmf: k must be >= 1");
    switch (kind_) {
    case ThresholdKind::geometric:
        return p_ * std::pow(1.0 - p_, static_cast<double>(k - 1));
    case ThresholdKind::discrete_exponential:
        return std::exp(-static_cast<double>(k)) * (std::exp(1.0) - 1.0);
    case ThresholdKind::yule_simon:
        return std::exp(std::log(rho_) + log_gamma(static_cast<double>(k)) +
                        log_gamma(rho_ + 1.0) - log_gamma(static_cast<double>(k) + rho_ + 1.0));
    case ThresholdKind::deterministic:
        return k == m_ ? 1.0 : 0.0;
    case ThresholdKind::empirical:
        return k <= static_cast<long long>(pmf_.size()) ? pmf_[static_cast<std::size_t>(k - 1)]
                                                        : 0.0;
    case ThresholdKind::geometric_mixture:
        return survival(k - 1) - survival(k);
    }
    throw std::logic_error("ThresholdDist: unknown kind");
}

long long ThresholdDist::sample(RngStream& rng) const {
    switch (kind_) {
    case ThresholdKind::geometric: {
        if (p_ == 1.0)
            return 1;
        return 1 + static_cast<long long>(std::floor(std::log(rng.uniform()) / std::log1p(-p_)));
    }
    case ThresholdKind::discrete_exponential:
        return 1 + static_cast<long long>(std::floor(-std::log(rng.uniform())));
    case ThresholdKind::yule_simon: {
        // Yule-Simon is geometric with success probability U^{1/rho}
        const double s = std::pow(rng.uniform(), 1.0 / rho_);
        if (s >= 1.0)
            return 1;
        return 1 + static_cast<long long>(std::floor(std::log(rng.uniform()) / std::log1p(-s)));
    }
    case ThresholdKind::deterministic:
        return m_;
    case ThresholdKind::empirical: {
        double u = rng.uniform();
        for (std::size_t k = 0; k < pmf_.size(); ++k) {
            u -= pmf_[k];
            if (u <= 0.0)
                return static_cast<long long>(k) + 1;
        }
        return static_cast<long long>(pmf_.size());
    }
    case ThresholdKind::geometric_mixture: {
        const double p = mixing_.sample(rng);
        if (p >= 1.0)
            return 1;
        return 1 + static_cast<long long>(std::floor(std::log(rng.uniform()) / std::log1p(-p)));
    }
    }
    throw std::logic_error("ThresholdDist: unknown kind");
}

double threshold_survival(const ThresholdDist& d, long long k) {
    return d.survival(k);
}

// ---------------------------------------------------------------------------
// Hazard rates
// ---------------------------------------------------------------------------

namespace {

void check_shock_type(int n) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("shock type n must be 1 or 2");
}

SubordinatorSpec clock_of(const ProcessParams& p) {
    if (p.alpha == 1.0)
        return SubordinatorSpec::deterministic(1.0);
    return SubordinatorSpec::tempered_stable(p.alpha, p.theta);
}

double psi_at_total_rate(const ProcessParams& p) {
    return std::pow(p.total_rate() + p.theta, p.alpha) - std::pow(p.theta, p.alpha);
}

} // namespace

double hazard_rate_closed(const ProcessParams& p, int n) {
    check_shock_type(n);
    const double lambda_n = n == 1 ? p.lambda1 : p.lambda2;
    return lambda_n * p.alpha * std::pow(p.theta + p.total_rate(), p.alpha - 1.0);
}

double hazard_rate(const ProcessParams& p, int n, const BivariateCount& k, double t) {
    check_shock_type(n);
    if (!(t > 0.0))
        throw std::domain_error("hazard_rate: t must be positive");
    const long long h = k.total();
    if (h > kDerivativeRouteCap) {
        std::ostringstream msg;
        msg << "hazard_rate: h = " << h << " exceeds the derivative cap " << kDerivativeRouteCap;
        throw std::invalid_argument(msg.str());
    }
    // Numerator and denominator of the hazard formula are the state
    // probability written once through the Hoppe derivative sums and once
    // through the Wright series; their ratio is 1 up to route noise.
    const double numerator = total_count_pmf(p, h, t, PmfRoute::derivative);
    const double denominator = total_count_pmf(p, h, t, PmfRoute::wright);
    return hazard_rate_closed(p, n) * (numerator / denominator);
}

// ---------------------------------------------------------------------------
// Threshold-weighted series
// ---------------------------------------------------------------------------

namespace {

constexpr long long kThresholdSeriesCap = 5000;

/// sum over k >= k0 of weight(k) * pmf-like term; stops on vanishing
/// threshold survival, near-complete count mass, or 50 tiny terms.
template <typename WeightFn, typename MassFn, typename SurvivalFn>
double threshold_series(WeightFn weight, MassFn mass, SurvivalFn survival, long long k0,
                        const char* what) {
    KahanSum<double> acc;
    KahanSum<double> count_mass;
    int small_run = 0;
    for (long long k = k0; k < kThresholdSeriesCap; ++k) {
        const double w = weight(k);
        const double m = mass(k);
        const double term = w * m;
        acc.add(term);
        count_mass.add(m);
        if (survival(k) < 1e-12)
            return acc.value();
        if (count_mass.value() >= 1.0 - 1e-10)
            return acc.value();
        if (std::abs(term) < 1e-12) {
            if (++small_run >= 50)
                return acc.value();
        } else {
            small_run = 0;
        }
    }
    std::ostringstream msg;
    msg << what << ": threshold series did not converge within " << kThresholdSeriesCap
        << " terms";
    throw convergence_error(msg.str(), acc.value(), kThresholdSeriesCap, 0.0);
}

} // namespace

double reliability(const ProcessParams& p, const ThresholdDist& d, double t) {
    if (!(t >= 0.0))
        throw std::domain_error("reliability: t must be nonnegative");
    if (t == 0.0)
        return 1.0;
    return threshold_series([&d](long long k) { return d.survival(k); },
                            [&p, t](long long k) { return total_count_pmf(p, k, t); },
                            [&d](long long k) { return d.survival(k); }, 0, "reliability");
}

double reliability_series(const SubordinatorSpec& spec, double lambda1, double lambda2,
                          const ThresholdDist& d, double t) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("reliability_series: rates must be positive");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_series: t must be nonnegative");
    if (t == 0.0)
        return 1.0;
    const double lam = lambda1 + lambda2;
    return threshold_series(
        [&d](long long k) { return d.survival(k); },
        [&spec, lam, t](long long k) { return subordinated_count_pmf(spec, lam, k, t); },
        [&d](long long k) { return d.survival(k); }, 0, "reliability_series");
}

// ---------------------------------------------------------------------------
// Failure densities and cause probabilities
// ---------------------------------------------------------------------------

double failure_density(const ProcessParams& p, const ThresholdDist& d, int n, double t,
                       DensityRoute route) {
    check_shock_type(n);
    if (!(t > 0.0))
        throw std::domain_error("failure_density: t must be positive");
    const double constant = hazard_rate_closed(p, n);
    if (route == DensityRoute::closed) {
        return constant * threshold_series(
                              [&d](long long k) { return d.pmf(k + 1); },
                              [&p, t](long long k) { return total_count_pmf(p, k, t); },
                              [&d](long long k) { return d.survival(k); }, 0,
                              "failure_density");
    }
    // Literal lattice sum with per-state hazards; the exact hazard evaluation
    // is used while the derivative route is trustworthy, the constant beyond.
    constexpr long long literal_cap = 12;
    KahanSum<double> acc;
    KahanSum<double> count_mass;
    for (long long k = 1; k < kThresholdSeriesCap; ++k) {
        const double qk = d.pmf(k);
        KahanSum<double> level;
        for (long long k1 = 0; k1 <= k - 1; ++k1) {
            const BivariateCount cell(k1, k - 1 - k1);
            const double prob = btsfpp_pmf_wright(p, cell, t);
            const double rate =
                (k - 1 <= literal_cap) ? hazard_rate(p, n, cell, t) : constant;
            level.add(prob * rate);
            count_mass.add(prob);
        }
        acc.add(qk * level.value());
        if (d.survival(k) < 1e-12 || count_mass.value() >= 1.0 - 1e-10)
            return acc.value();
    }
    throw convergence_error("failure_density: threshold series did not converge", acc.value(),
                            kThresholdSeriesCap, 0.0);
}

namespace detail {

std::vector<double> visit_probabilities(const SubordinatorSpec& spec, double lambda1,
                                        double lambda2, long long max_level) {
    const double total_rate = laplace_exponent(spec, lambda1 + lambda2);
    std::vector<double> jump_law(static_cast<std::size_t>(max_level) + 1, 0.0);
    for (long long j = 1; j <= max_level; ++j)
        jump_law[static_cast<std::size_t>(j)] =
            count_jump_mass_total(spec, lambda1, lambda2, j) / total_rate;
    std::vector<double> v(static_cast<std::size_t>(max_level) + 1, 0.0);
    v[0] = 1.0;
    for (long long m = 1; m <= max_level; ++m) {
        KahanSum<double> acc;
        for (long long j = 1; j <= m; ++j)
            acc.add(v[static_cast<std::size_t>(m - j)] * jump_law[static_cast<std::size_t>(j)]);
        v[static_cast<std::size_t>(m)] = acc.value();
    }
    return v;
}

double sojourn_integral_renewal(const ProcessParams& p, long long h) {
    const auto v = visit_probabilities(clock_of(p), p.lambda1, p.lambda2, h);
    return v[static_cast<std::size_t>(h)] / psi_at_total_rate(p);
}

double sojourn_integral(const ProcessParams& p, long long h) {
    if (h < 0)
        throw std::invalid_argument("sojourn_integral: h must be nonnegative");
    constexpr long long hoppe_cap = 12; // the alternating sums lose precision beyond
    if (h > hoppe_cap)
        return sojourn_integral_renewal(p, h);
    const double lam = p.total_rate();
    const double base = lam + p.theta;
    const double theta_a = std::pow(p.theta, p.alpha);
    const double psi = psi_at_total_rate(p);
    KahanSum<double> acc;
    for (long long l = 0; l <= h; ++l) {
        double binom_lj = 1.0;
        for (long long j = 0; j <= l; ++j) {
            double binom_ji = 1.0;
            KahanSum<double> inner;
            for (long long i = 0; i <= j; ++i) {
                inner.add(binom_ji * falling_factorial(p.alpha * static_cast<double>(i), h) *
                          std::pow(base, p.alpha * static_cast<double>(i) - static_cast<double>(h)) *
                          std::pow(-theta_a, static_cast<double>(j - i)));
                binom_ji *= static_cast<double>(j - i) / static_cast<double>(i + 1);
            }
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc.add(binom_lj * sign * std::pow(psi, -static_cast<double>(j) - 1.0) *
                    inner.value());
            binom_lj *= static_cast<double>(l - j) / static_cast<double>(j + 1);
        }
    }
    const int parity = (h % 2 == 0) ? 1 : -1;
    return std::exp(h * std::log(lam) - log_factorial(h)) * parity * acc.value();
}

} // namespace detail

double failure_cause_prob(const ProcessParams& p, const ThresholdDist& d, int n,
                          CauseRoute route) {
    check_shock_type(n);
    if (route == CauseRoute::integral) {
        const auto g = [&p, &d, n](double t) {
            return t > 0.0 ? failure_density(p, d, n, t, DensityRoute::closed) : 0.0;
        };
        return integrate_upper(g, 0.0, 1e-10);
    }
    const double constant = hazard_rate_closed(p, n);
    // Sojourn integrals are bounded by 1/psi(Lambda); reuse the renewal visit
    // probabilities across all levels at once.
    const double psi = psi_at_total_rate(p);
    KahanSum<double> acc;
    int small_run = 0;
    constexpr long long hoppe_cap = 12;
    std::vector<double> visits;
    for (long long k = 1; k < kThresholdSeriesCap; ++k) {
        const long long h = k - 1;
        double sojourn;
        if (h <= hoppe_cap) {
            sojourn = detail::sojourn_integral(p, h);
        } else {
            if (visits.empty())
                visits = detail::visit_probabilities(clock_of(p), p.lambda1, p.lambda2,
                                                     kThresholdSeriesCap);
            sojourn = visits[static_cast<std::size_t>(h)] / psi;
        }
        const double term = d.pmf(k) * sojourn;
        acc.add(term);
        if (d.survival(k) < 1e-12)
            break;
        if (std::abs(term) < 1e-14) {
            if (++small_run >= 50)
                break;
        } else {
            small_run = 0;
        }
    }
    return constant * acc.value();
}

// ---------------------------------------------------------------------------
// Reliability closed forms
// ---------------------------------------------------------------------------

double hazard_of_T(const ProcessParams& p, const ThresholdDist& d, double t) {
    if (!(t > 0.0))
        throw std::domain_error("hazard_of_T: t must be positive");
    const double r = reliability(p, d, t);
    if (r < 1e-250)
        throw std::domain_error("hazard_of_T: reliability underflowed");
    double step = 1e-5 * std::max(1.0, t);
    if (step >= t)
        step = t / 2.0;
    const double g = -(reliability(p, d, t + step) - reliability(p, d, t - step)) / (2.0 * step);
    return g / r;
}

double reliability_general_geometric(const SubordinatorSpec& spec, double lambda1, double lambda2,
                                     double p, double t) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("reliability_general_geometric: rates must be positive");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("reliability_general_geometric: p must lie in (0,1]");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_general_geometric: t must be nonnegative");
    return std::exp(-t * laplace_exponent(spec, (lambda1 + lambda2) * p));
}

double reliability_mixture(const SubordinatorSpec& spec, double lambda1, double lambda2,
                           const MixingLaw& law, double t) {
    if (!(t >= 0.0))
        throw std::domain_error("reliability_mixture: t must be nonnegative");
    if (law.kind() == MixingKind::point_mass)
        return reliability_general_geometric(spec, lambda1, lambda2, law.point(), t);
    if (t == 0.0)
        return 1.0;
    const double lam = lambda1 + lambda2;
    const auto f = [&spec, &law, lam, t](double p) {
        return std::exp(-t * laplace_exponent(spec, lam * p)) * law.density(p);
    };
    return integrate_finite(f, law.support_lower(), 1.0, 1e-10);
}

double reliability_uniform_closed(const ProcessParams& p, double t) {
    if (!(p.alpha < 1.0) || !(p.theta > 0.0))
        throw std::invalid_argument(
            "reliability_uniform_closed: requires alpha in (0,1) and theta > 0");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_uniform_closed: t must be nonnegative");
    if (t == 0.0)
        return 1.0;
    const double lam = p.total_rate();
    const double theta_a = std::pow(p.theta, p.alpha);
    const double l = (p.alpha - 1.0) / p.alpha;
    return std::exp(t * theta_a) / (p.alpha * lam) *
           (p.theta * gen_exp_integral(l, t * theta_a) -
            (lam + p.theta) * gen_exp_integral(l, t * std::pow(lam + p.theta, p.alpha)));
}

double reliability_lomax_closed(const ProcessParams& p, double t) {
    if (!(p.alpha < 1.0) || !(p.theta > 0.0))
        throw std::invalid_argument(
            "reliability_lomax_closed: requires alpha in (0,1) and theta > 0");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_lomax_closed: t must be nonnegative");
    if (t == 0.0)
        return 1.0;
    const double ratio = 1.0 + p.total_rate() / p.theta;
    const double theta_a = std::pow(p.theta, p.alpha);
    const double l = 2.0 - 1.0 / p.alpha;
    const double prefactor = std::exp(t * theta_a) * (p.alpha - 1.0) /
                             (p.alpha * (1.0 - std::pow(ratio, 1.0 - p.alpha)));
    return prefactor * (gen_exp_integral(l, t * theta_a) -
                        std::pow(ratio, 1.0 - p.alpha) *
                            gen_exp_integral(l, t * theta_a * std::pow(ratio, p.alpha)));
}

double reliability_weibull_closed(const ProcessParams& p, double t) {
    if (!(t >= 0.0))
        throw std::domain_error("reliability_weibull_closed: t must be nonnegative");
    const double psi = psi_at_total_rate(p);
    return (1.0 - std::exp(-(t + 1.0) * psi)) / ((t + 1.0) * (1.0 - std::exp(-psi)));
}

double reliability_yule_simon(const ProcessParams& p, double rho, double t) {
    if (!(rho > 0.0))
        throw std::invalid_argument("reliability_yule_simon: rho must be positive");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_yule_simon: t must be nonnegative");
    if (t == 0.0)
        return 1.0; // the integral form needs t > 0; survival at 0 is exact
    const double lam = p.total_rate();
    const double theta_a = std::pow(p.theta, p.alpha);
    const auto f = [&p, rho, lam, theta_a, t](double z) {
        const double w = lam * (1.0 - z) + p.theta;
        return std::pow(1.0 - z, rho) * t * p.alpha * lam * std::pow(w, p.alpha - 1.0) *
               std::exp(-t * (std::pow(w, p.alpha) - theta_a));
    };
    return integrate_finite(f, 0.0, 1.0, 1e-10);
}

FailureLaw evaluate_failure_law(const ProcessParams& p, const ThresholdDist& d,
                                const std::vector<double>& times, FailureSemantics semantics) {
    FailureLaw law;
    law.semantics = semantics;
    law.times = times;
    const double g0_1 = hazard_rate_closed(p, 1) * d.pmf(1);
    const double g0_2 = hazard_rate_closed(p, 2) * d.pmf(1);
    for (double t : times) {
        if (!(t >= 0.0))
            throw std::domain_error("evaluate_failure_law: times must be nonnegative");
        law.g1.push_back(t > 0.0 ? failure_density(p, d, 1, t) : g0_1);
        law.g2.push_back(t > 0.0 ? failure_density(p, d, 2, t) : g0_2);
        if (semantics == FailureSemantics::crossing) {
            law.reliability_values.push_back(reliability(p, d, t));
        } else {
            const double hit_mass =
                t > 0.0 ? integrate_finite(
                              [&p, &d](double s) {
                                  return failure_density(p, d, 1, s) + failure_density(p, d, 2, s);
                              },
                              0.0, t, 1e-10)
                        : 0.0;
            law.reliability_values.push_back(1.0 - hit_mass);
        }
    }
    law.cause1 = failure_cause_prob(p, d, 1);
    law.cause2 = failure_cause_prob(p, d, 2);
    return law;
}

} // namespace btsfpp
