#pragma once

#include <vector>

#include "btsfpp/rng.hpp"
#include "btsfpp/subordinator.hpp"

namespace btsfpp {

/// Parameters of the bivariate tempered space-fractional Poisson process:
/// stability index alpha in (0,1], tempering theta >= 0 and the two shock
/// rates. alpha = 1 reduces every quantity to the ordinary bivariate Poisson
/// case.
struct ProcessParams {
    double alpha;
    double theta;
    double lambda1;
    double lambda2;

    ProcessParams(double alpha_, double theta_, double lambda1_, double lambda2_);
    double total_rate() const { return lambda1 + lambda2; }
};

struct BivariateCount {
    long long k1;
    long long k2;

    BivariateCount(long long k1_, long long k2_);
    long long total() const { return k1 + k2; }
};

enum class PmfRoute {
    wright,     // series form of the pmf (outer tempering series over Wright functions)
    derivative, // finite Hoppe-formula sums of the h-th Laplace-transform derivative
    automatic   // derivative for h <= 10, series beyond
};

/// Largest h accepted by the derivative route before its finite sums lose
/// double precision to cancellation.
inline constexpr long long kDerivativeRouteCap = 40;

/// P{N1 = k1, N2 = k2} for independent Poisson components observed at
/// operational time s.
double bivariate_poisson_pmf(double lambda1, double lambda2, const BivariateCount& k, double s);

/// Joint pmf via the Wright-series form, t > 0.
double btsfpp_pmf_wright(const ProcessParams& p, const BivariateCount& k, double t);

/// Joint pmf via the h-th derivative of the subordinator Laplace transform
/// (finite triple sums, no truncation error); requires h <= kDerivativeRouteCap.
double btsfpp_pmf_derivative(const ProcessParams& p, const BivariateCount& k, double t);

double btsfpp_pmf(const ProcessParams& p, const BivariateCount& k, double t,
                  PmfRoute route = PmfRoute::automatic);

/// Univariate tempered space-fractional pmf P{N(t) = k} at rate lambda.
double tsfpp_pmf(double lambda, double alpha, double theta, long long k, double t);

/// pmf of the total count N1 + N2 (rate Lambda) of the bivariate process.
double total_count_pmf(const ProcessParams& p, long long h, double t,
                       PmfRoute route = PmfRoute::automatic);

/// pmf of a Poisson count at rate lambda run on the clock of an arbitrary
/// subordinator.
double subordinated_count_pmf(const SubordinatorSpec& spec, double lambda, long long k, double t);

/// Probability generating function E[u1^N1 u2^N2].
double btsfpp_pgf(const ProcessParams& p, double u1, double u2, double t);

/// |d/dt G + ([lambda1(1-u1)+lambda2(1-u2)+theta]^alpha - theta^alpha) G|
/// with a central time difference; small values certify the pgf ODE.
double pgf_ode_residual(const ProcessParams& p, double u1, double u2, double t, double step);

/// Residual of the pmf's governing fractional difference-differential
/// equation, evaluated with the backward-shift operator expansion truncated
/// at j = k1 + k2 (shifts below the origin vanish).
double pmf_pde_residual(const ProcessParams& p, const BivariateCount& k, double t, double step);

enum class LevyBase {
    derived, // (theta + lambda1 + lambda2)^{alpha-h}, consistent with the total-rate identity
    printed  // (theta + k1 + k2)^{alpha-h}, fails the quadrature cross-check
};

/// Mass the discrete Levy measure of the counting pair assigns to the jump
/// vector k != (0,0).
double levy_measure_mass(const ProcessParams& p, const BivariateCount& k,
                         LevyBase base = LevyBase::derived);

/// Mass assigned to a jump of the pair driven by an arbitrary subordinator.
double count_jump_mass(const SubordinatorSpec& spec, double lambda1, double lambda2,
                       const BivariateCount& k);

/// Total mass of all jumps with k1 + k2 = h (h >= 1).
double count_jump_mass_total(const SubordinatorSpec& spec, double lambda1, double lambda2,
                             long long h);

/// |closed form - double series| of the exponential/Wright identity
/// exp[-t((Lambda(1-u)+theta)^alpha - theta^alpha)] = sum_k u^k P{Z(t)=k}.
double wright_exponential_identity_residual(const ProcessParams& p, double u, double t);

struct TailCutoff {
    long long cutoff = 0;     // first K satisfying the rule (or the cap)
    double cumulative = 0.0;  // sum of the total-count pmf up to cutoff
    bool reached = false;     // whether the rule was satisfied before the cap
};

/// Adaptive diagonal cutoff K(eps): grow K until the cumulative total-count
/// mass exceeds 1 - eps and the last diagonal carries less than eps/10.
TailCutoff tail_cutoff_status(const ProcessParams& p, double t, double eps,
                              long long hard_cap = 20000);

/// Same rule, throwing with diagnostics if the cap is hit first.
long long tail_cutoff(const ProcessParams& p, double t, double eps, long long hard_cap = 20000);

/// Draw the pair of counts at time t by sampling the subordinator and two
/// conditionally independent Poisson variables.
BivariateCount simulate_counts(const ProcessParams& p, double t, RngStream& rng);

/// Counting path on a grid: subordinator values and counts per grid time.
struct CountPath {
    std::vector<double> times;
    std::vector<double> operational_times; // subordinator path
    std::vector<BivariateCount> counts;

    struct Jump {
        double time;
        long long j1;
        long long j2;
    };
    /// Nonzero count increments, stamped at the grid time where they appear.
    std::vector<Jump> jumps() const;
};

CountPath simulate_path(const ProcessParams& p, const PathGrid& grid, RngStream& rng);

namespace detail {

/// d^h/du^h exp(-t((u+theta)^alpha - theta^alpha)) via Hoppe's formula.
double hoppe_derivative(double alpha, double theta, double t, double u, long long h);

/// Total-count pmf of the tempered process through the exponential-tilting
/// identity p_theta(h) = e^{t theta^alpha} (lam/(lam+theta))^h p_0(h; lam+theta);
/// a single Wright series, stable for large h.
double total_count_pmf_tilted(double lambda, double alpha, double theta, long long h, double t);

/// Literal series form (outer tempering series), evaluated in the log domain.
double total_count_pmf_series(double lambda, double alpha, double theta, long long h, double t);

/// Finite-sum derivative route at level h (h <= kDerivativeRouteCap).
double total_count_pmf_derivative(double lambda, double alpha, double theta, long long h,
                                  double t);

/// Multinomial thinning factor h!/(k1! k2!) (lambda1/Lambda)^k1 (lambda2/Lambda)^k2.
double thinning_factor(double lambda1, double lambda2, const BivariateCount& k);

} // namespace detail

} // namespace btsfpp
