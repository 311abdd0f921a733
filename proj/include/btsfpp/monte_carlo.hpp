#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "btsfpp/process.hpp"
#include "btsfpp/shock.hpp"

namespace btsfpp {

/// Simulation settings. Identical configs produce bitwise-identical reports:
/// the path range is split into fixed chunks, each chunk draws from a stream
/// derived from the master seed, and results are reduced in chunk order.
struct SimConfig {
    long long paths = 100000;
    std::uint64_t master_seed = 1;
    int worker_count = 1;
    double time_horizon = 1.0;
    FailureSemantics semantics = FailureSemantics::crossing;
    double z_threshold = 4.0;

    void validate() const;
};

struct ComparisonRecord {
    std::string name;
    double analytic = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    bool pass = true;
};

struct SimReport {
    std::vector<ComparisonRecord> records;
    SimConfig config;
    double runtime_seconds = 0.0; // not serialized; wall time is not reproducible

    bool all_pass() const;
    /// Canonical JSON: comparison records plus a config echo.
    nlohmann::json to_json() const;
};

/// Empirical cell frequencies (k1 + k2 <= 6) against the analytic pmf.
SimReport estimate_pmf(const ProcessParams& p, double t, const SimConfig& cfg);

/// Shock-path simulation: crossing survival on a 10-point grid, cause
/// frequencies within the horizon, hit defect and censoring.
SimReport estimate_failure_law(const ProcessParams& p, const ThresholdDist& d,
                               const SimConfig& cfg);

/// Same for an arbitrary subordinator clock; compares crossing survival
/// against the series reliability (theorem-exact closed form for geometric
/// thresholds).
SimReport estimate_failure_law(const SubordinatorSpec& spec, double lambda1, double lambda2,
                               const ThresholdDist& d, const SimConfig& cfg);

/// Mean of e^{-u S(t)} against e^{-t psi(u)} for each u in the grid.
SimReport estimate_subordinator_laplace(const SubordinatorSpec& spec, double t,
                                        const std::vector<double>& u_grid, const SimConfig& cfg);

/// Raw failure-time draws for one path each: time of first crossing (or
/// +inf when censored at the horizon) and the cause when the crossing was a
/// unit step (0 otherwise).
struct FailureDraw {
    double time = 0.0;
    int unit_cause = 0; // 1 or 2 when the threshold was hit exactly by a unit step
    bool censored = false;
    bool exact_landing = false; // landed exactly on L (unit step or bulk)
};

std::vector<FailureDraw> simulate_failure_draws(const SubordinatorSpec& spec, double lambda1,
                                                double lambda2, const ThresholdDist& d,
                                                const SimConfig& cfg);

} // namespace btsfpp
