#pragma once

#include <vector>

#include "btsfpp/rng.hpp"

namespace btsfpp {

enum class SubordinatorKind { tempered_stable, stable, gamma, deterministic };

/// A Levy subordinator described by its Laplace exponent, Levy density and an
/// exact-in-distribution increment sampler.
class SubordinatorSpec {
  public:
    static SubordinatorSpec tempered_stable(double alpha, double theta);
    static SubordinatorSpec stable(double alpha);
    static SubordinatorSpec gamma_process(double shape, double rate);
    static SubordinatorSpec deterministic(double drift);

    SubordinatorKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double theta() const { return theta_; }
    double shape() const { return shape_; }
    double rate() const { return rate_; }
    double drift() const { return drift_; }

  private:
    SubordinatorSpec() = default;
    SubordinatorKind kind_ = SubordinatorKind::deterministic;
    double alpha_ = 0.0, theta_ = 0.0, shape_ = 0.0, rate_ = 0.0, drift_ = 0.0;
};

/// Strictly increasing time points t0 = 0 < t1 < ... < tm.
class PathGrid {
  public:
    explicit PathGrid(std::vector<double> times);
    const std::vector<double>& times() const { return times_; }

  private:
    std::vector<double> times_;
};

/// psi(u) with E[e^{-u S(t)}] = e^{-t psi(u)}; psi(0) = 0 for every variant.
double laplace_exponent(const SubordinatorSpec& spec, double u);

/// Levy density nu(s), s > 0. The deterministic variant has none.
double levy_density(const SubordinatorSpec& spec, double s);

/// One increment distributed as S(dt). Tempered-stable draws use
/// exponential-tilting rejection on a positive-stable proposal, subdividing dt
/// whenever the acceptance rate e^{-dt theta^alpha} would fall below 0.1.
double sample_increment(const SubordinatorSpec& spec, double dt, RngStream& rng);

/// Cumulative increments over the grid; starts at 0, nondecreasing.
std::vector<double> sample_path(const SubordinatorSpec& spec, const PathGrid& grid,
                                RngStream& rng);

namespace detail {
/// Positive alpha-stable draw with E[e^{-u X}] = e^{-u^alpha} (Kanter's method).
double sample_positive_stable(double alpha, RngStream& rng);
} // namespace detail

} // namespace btsfpp
