#include "btsfpp/subordinator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace btsfpp {

SubordinatorSpec SubordinatorSpec::tempered_stable(double alpha, double theta) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("tempered_stable: alpha must lie in (0,1)");
    if (!(theta >= 0.0))
        throw std::invalid_argument("tempered_stable: theta must be >= 0");
    SubordinatorSpec s;
    s.kind_ = SubordinatorKind::tempered_stable;
    s.alpha_ = alpha;
    s.theta_ = theta;
    return s;
}

SubordinatorSpec SubordinatorSpec::stable(double alpha) {
    SubordinatorSpec s = tempered_stable(alpha, 0.0);
    s.kind_ = SubordinatorKind::stable;
    return s;
}

SubordinatorSpec SubordinatorSpec::gamma_process(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("gamma_process: shape and rate must be positive");
    SubordinatorSpec s;
    s.kind_ = SubordinatorKind::gamma;
    s.shape_ = shape;
    s.rate_ = rate;
    return s;
}

SubordinatorSpec SubordinatorSpec::deterministic(double drift) {
    if (!(drift > 0.0))
        throw std::invalid_argument("deterministic: drift must be positive");
    SubordinatorSpec s;
    s.kind_ = SubordinatorKind::deterministic;
    s.drift_ = drift;
    return s;
}

PathGrid::PathGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty() || times_.front() != 0.0)
        throw std::invalid_argument("PathGrid: grid must start at t0 = 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("PathGrid: time points must be strictly increasing");
}

double laplace_exponent(const SubordinatorSpec& spec, double u) {
    if (!(u >= 0.0))
        throw std::domain_error("laplace_exponent: u must be nonnegative");
    switch (spec.kind()) {
    case SubordinatorKind::tempered_stable:
    case SubordinatorKind::stable:
        return std::pow(u + spec.theta(), spec.alpha()) - std::pow(spec.theta(), spec.alpha());
    case SubordinatorKind::gamma:
        return spec.shape() * std::log1p(u / spec.rate());
    case SubordinatorKind::deterministic:
        return spec.drift() * u;
    }
    throw std::logic_error("laplace_exponent: unknown variant");
}

double levy_density(const SubordinatorSpec& spec, double s) {
    if (!(s > 0.0))
        throw std::domain_error("levy_density: s must be positive");
    switch (spec.kind()) {
    case SubordinatorKind::tempered_stable:
    case SubordinatorKind::stable:
        return spec.alpha() * std::exp(-spec.theta() * s) /
               (std::tgamma(1.0 - spec.alpha()) * std::pow(s, spec.alpha() + 1.0));
    case SubordinatorKind::gamma:
        return spec.shape() * std::exp(-spec.rate() * s) / s;
    case SubordinatorKind::deterministic:
        throw std::invalid_argument("levy_density: deterministic subordinator has no density");
    }
    throw std::logic_error("levy_density: unknown variant");
}

namespace detail {

double sample_positive_stable(double alpha, RngStream& rng) {
    // Kanter's transformation: X = (A(U)/E)^{(1-alpha)/alpha} with
    // A(u) = sin(a pi u)^{a/(1-a)} sin((1-a) pi u) / sin(pi u)^{1/(1-a)}.
    constexpr double pi = std::numbers::pi;
    const double u = rng.uniform();
    const double e = rng.exponential();
    const double log_a = (alpha / (1.0 - alpha)) * std::log(std::sin(alpha * pi * u)) +
                         std::log(std::sin((1.0 - alpha) * pi * u)) -
                         (1.0 / (1.0 - alpha)) * std::log(std::sin(pi * u));
    return std::exp(((1.0 - alpha) / alpha) * (log_a - std::log(e)));
}

} // namespace detail

namespace {

double sample_tempered_stable(double alpha, double theta, double dt, RngStream& rng) {
    const double inv_alpha = 1.0 / alpha;
    if (theta == 0.0)
        return std::pow(dt, inv_alpha) * detail::sample_positive_stable(alpha, rng);
    // Acceptance of the tilting rejection is e^{-dt theta^alpha}; split dt so
    // each piece accepts with probability at least 0.1.
    const double cost = dt * std::pow(theta, alpha);
    const long long pieces = std::max<long long>(1, static_cast<long long>(std::ceil(cost / std::log(10.0))));
    const double piece = dt / static_cast<double>(pieces);
    const double scale = std::pow(piece, inv_alpha);
    double total = 0.0;
    for (long long p = 0; p < pieces; ++p) {
        for (;;) {
            const double x = scale * detail::sample_positive_stable(alpha, rng);
            if (rng.uniform() < std::exp(-theta * x)) {
                total += x;
                break;
            }
        }
    }
    return total;
}

} // namespace

double sample_increment(const SubordinatorSpec& spec, double dt, RngStream& rng) {
    if (!(dt > 0.0))
        throw std::domain_error("sample_increment: dt must be positive");
    switch (spec.kind()) {
    case SubordinatorKind::tempered_stable:
    case SubordinatorKind::stable:
        return sample_tempered_stable(spec.alpha(), spec.theta(), dt, rng);
    case SubordinatorKind::gamma: {
        std::gamma_distribution<double> dist(spec.shape() * dt, 1.0 / spec.rate());
        double x;
        do {
            x = dist(rng.engine());
        } while (!(x > 0.0)); // underflow guard: increments are strictly positive
        return x;
    }
    case SubordinatorKind::deterministic:
        return spec.drift() * dt;
    }
    throw std::logic_error("sample_increment: unknown variant");
}

std::vector<double> sample_path(const SubordinatorSpec& spec, const PathGrid& grid,
                                RngStream& rng) {
    const auto& t = grid.times();
    std::vector<double> path(t.size());
    path[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        path[i] = path[i - 1] + sample_increment(spec, t[i] - t[i - 1], rng);
    return path;
}

} // namespace btsfpp
