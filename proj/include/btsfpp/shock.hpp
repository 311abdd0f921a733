#pragma once

#include <vector>

#include "btsfpp/process.hpp"
#include "btsfpp/subordinator.hpp"

namespace btsfpp {

enum class MixingKind { uniform, truncated_lomax, truncated_weibull, point_mass };

/// Mixing distribution over the geometric parameter p, supported on (0,1).
/// The truncated laws are renormalized over their support inside (0,1).
class MixingLaw {
  public:
    static MixingLaw uniform();
    static MixingLaw truncated_lomax(double a, double b);
    static MixingLaw truncated_weibull(double a, double b, double c);
    static MixingLaw point_mass(double p);

    MixingKind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double point() const { return point_; }

    /// Normalized density on (0,1); zero off the support.
    double density(double p) const;
    /// Lower end of the support inside [0,1).
    double support_lower() const;
    /// Inverse-CDF draw of p.
    double sample(RngStream& rng) const;

  private:
    MixingLaw() = default;
    MixingKind kind_ = MixingKind::uniform;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0, point_ = 0.0;
};

enum class ThresholdKind {
    geometric,
    discrete_exponential,
    yule_simon,
    deterministic,
    empirical,
    geometric_mixture
};

/// Random failure threshold L on {1, 2, ...}: pmf q_k and survival
/// qbar_k = P(L > k) with qbar_0 = 1.
class ThresholdDist {
  public:
    static ThresholdDist geometric(double p);
    static ThresholdDist discrete_exponential();
    static ThresholdDist yule_simon(double rho);
    static ThresholdDist deterministic(long long m);
    static ThresholdDist empirical(std::vector<double> pmf);
    static ThresholdDist geometric_mixture(MixingLaw law);

    ThresholdKind kind() const { return kind_; }
    double geometric_p() const { return p_; }
    double rho() const { return rho_; }
    long long level() const { return m_; }
    const MixingLaw& mixing() const { return mixing_; }

    double survival(long long k) const; // P(L > k)
    double pmf(long long k) const;      // P(L = k), k >= 1
    long long sample(RngStream& rng) const;

  private:
    ThresholdDist() = default;
    ThresholdKind kind_ = ThresholdKind::geometric;
    double p_ = 1.0;
    double rho_ = 0.0;
    long long m_ = 1;
    std::vector<double> pmf_;
    std::vector<double> survival_;
    MixingLaw mixing_ = MixingLaw::uniform();
};

double threshold_survival(const ThresholdDist& d, long long k);

enum class FailureSemantics {
    hitting, // failure when the count reaches L through a unit step from L-1
    crossing // failure at the first time the count is >= L
};

/// Transition rate of a single type-n increment, evaluated through the ratio
/// of the derivative-route and series-route pmfs that the hazard formula's
/// numerator and denominator spell out; equals the closed form up to
/// floating-point noise.
double hazard_rate(const ProcessParams& p, int n, const BivariateCount& k, double t);

/// Closed form lambda_n alpha (Lambda+theta)^{alpha-1}; coincides with the
/// Levy mass of the unit jump e_n.
double hazard_rate_closed(const ProcessParams& p, int n);

enum class DensityRoute {
    closed,       // hazard constant times threshold-weighted total-count pmf
    hazard_series // literal sum over the bivariate lattice with hazard factors
};

/// Sub-density g_n(t) of failure by a type-n shock (hitting semantics).
double failure_density(const ProcessParams& p, const ThresholdDist& d, int n, double t,
                       DensityRoute route = DensityRoute::closed);

/// Crossing-semantics reliability: sum_k qbar_k P(Z(t) = k).
double reliability(const ProcessParams& p, const ThresholdDist& d, double t);

/// Same series for an arbitrary subordinator clock.
double reliability_series(const SubordinatorSpec& spec, double lambda1, double lambda2,
                          const ThresholdDist& d, double t);

/// Hazard rate of the failure time T: -dR/dt / R with a central difference.
double hazard_of_T(const ProcessParams& p, const ThresholdDist& d, double t);

enum class CauseRoute {
    series,  // termwise-integrated closed form (renewal continuation for large thresholds)
    integral // numerical integration of the failure density
};

/// P(zeta = n): probability that failure occurs through a type-n unit step.
double failure_cause_prob(const ProcessParams& p, const ThresholdDist& d, int n,
                          CauseRoute route = CauseRoute::series);

/// Theorem-exact reliability for a geometric threshold and any subordinator:
/// exp(-t psi((lambda1+lambda2) p)).
double reliability_general_geometric(const SubordinatorSpec& spec, double lambda1, double lambda2,
                                     double p, double t);

/// Mixture of geometric thresholds: int_0^1 e^{-t psi(Lambda p)} dG(p).
double reliability_mixture(const SubordinatorSpec& spec, double lambda1, double lambda2,
                           const MixingLaw& law, double t);

/// Closed forms of the three mixture special cases (tempered-stable clock).
double reliability_uniform_closed(const ProcessParams& p, double t);
double reliability_lomax_closed(const ProcessParams& p, double t);
double reliability_weibull_closed(const ProcessParams& p, double t);

/// Yule-Simon threshold reliability via the integral form (series route at t = 0).
double reliability_yule_simon(const ProcessParams& p, double rho, double t);

/// Reliability, sub-densities and cause probabilities assembled on a grid.
struct FailureLaw {
    std::vector<double> times;
    std::vector<double> reliability_values;
    std::vector<double> g1;
    std::vector<double> g2;
    double cause1 = 0.0;
    double cause2 = 0.0;
    FailureSemantics semantics = FailureSemantics::crossing;
};

FailureLaw evaluate_failure_law(const ProcessParams& p, const ThresholdDist& d,
                                const std::vector<double>& times,
                                FailureSemantics semantics = FailureSemantics::crossing);

namespace detail {

/// Expected total time the count spends at level h: termwise-integrated
/// derivative route for small h, renewal-equation continuation beyond.
double sojourn_integral(const ProcessParams& p, long long h);

/// Same quantity from the pure renewal route (visit probability / jump rate).
double sojourn_integral_renewal(const ProcessParams& p, long long h);

/// P(the total-count chain ever visits level m) for the jump law of `spec`.
std::vector<double> visit_probabilities(const SubordinatorSpec& spec, double lambda1,
                                        double lambda2, long long max_level);

} // namespace detail

} // namespace btsfpp
