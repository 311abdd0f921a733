#include "btsfpp/monte_carlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "btsfpp/errors.hpp"
#include "btsfpp/quadrature.hpp"

namespace btsfpp {

void SimConfig::validate() const {
    if (paths < 1)
        throw std::invalid_argument("SimConfig: paths must be >= 1");
    if (worker_count < 1)
        throw std::invalid_argument("SimConfig: worker_count must be >= 1");
    if (!(time_horizon > 0.0))
        throw std::invalid_argument("SimConfig: time_horizon must be positive");
    if (!(z_threshold > 0.0))
        throw std::invalid_argument("SimConfig: z_threshold must be positive");
}

bool SimReport::all_pass() const {
    return std::all_of(records.begin(), records.end(),
                       [](const ComparisonRecord& r) { return r.pass; });
}

nlohmann::json SimReport::to_json() const {
    nlohmann::json j;
    j["config"] = {{"paths", config.paths},
                   {"master_seed", config.master_seed},
                   {"worker_count", config.worker_count},
                   {"time_horizon", config.time_horizon},
                   {"semantics",
                    config.semantics == FailureSemantics::crossing ? "crossing" : "hitting"},
                   {"z_threshold", config.z_threshold}};
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) {
        j["records"].push_back({{"name", r.name},
                                {"analytic", r.analytic},
                                {"estimate", r.estimate},
                                {"std_error", r.std_error},
                                {"z", r.z},
                                {"verdict", r.pass ? "pass" : "fail"}});
    }
    return j;
}

namespace {

/// Runs `work(chunk, begin, end, rng)` over a fixed partition of the path
/// range, one derived stream per chunk; tallies are returned in chunk order
/// so reports do not depend on scheduling.
template <typename Tally, typename Work>
std::vector<Tally> run_chunks(const SimConfig& cfg, Work work) {
    const int workers = cfg.worker_count;
    std::vector<Tally> tallies(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            try {
                const long long begin = cfg.paths * w / workers;
                const long long end = cfg.paths * (w + 1) / workers;
                RngStream rng = RngStream::child(cfg.master_seed, static_cast<std::uint64_t>(w));
                tallies[static_cast<std::size_t>(w)] = work(w, begin, end, rng);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : threads)
        th.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return tallies;
}

ComparisonRecord make_binomial_record(const std::string& name, double analytic, long long hits,
                                      long long n, double z_threshold) {
    ComparisonRecord r;
    r.name = name;
    r.analytic = analytic;
    r.estimate = static_cast<double>(hits) / static_cast<double>(n);
    r.std_error = std::sqrt(std::max(analytic * (1.0 - analytic), 1e-300) /
                            static_cast<double>(n));
    r.z = (r.estimate - analytic) / r.std_error;
    r.pass = std::abs(r.z) <= z_threshold;
    return r;
}

} // namespace

SimReport estimate_pmf(const ProcessParams& p, double t, const SimConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    constexpr long long max_h = 6;
    // cells (k1, k2) with k1 + k2 <= max_h, ordered by (h, k1)
    std::vector<BivariateCount> cells;
    for (long long h = 0; h <= max_h; ++h)
        for (long long k1 = 0; k1 <= h; ++k1)
            cells.emplace_back(k1, h - k1);

    using Tally = std::vector<long long>;
    auto tallies = run_chunks<Tally>(cfg, [&](int, long long begin, long long end, RngStream& rng) {
        Tally counts(cells.size(), 0);
        for (long long i = begin; i < end; ++i) {
            const BivariateCount k = simulate_counts(p, t, rng);
            if (k.total() <= max_h) {
                const std::size_t idx =
                    static_cast<std::size_t>(k.total() * (k.total() + 1) / 2 + k.k1);
                ++counts[idx];
            }
        }
        return counts;
    });
    Tally total(cells.size(), 0);
    for (const auto& tally : tallies)
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i] += tally[i];

    SimReport report;
    report.config = cfg;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& k = cells[i];
        const double analytic = btsfpp_pmf(p, k, t);
        report.records.push_back(make_binomial_record(
            "pmf(" + std::to_string(k.k1) + "," + std::to_string(k.k2) + ")", analytic, total[i],
            cfg.paths, cfg.z_threshold));
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

namespace {

/// Inverse-CDF table for the total jump size of the counting pair.
struct JumpLaw {
    std::vector<double> cumulative; // P(J <= h), h = 1, 2, ...
    double unit_type1_share = 0.0;  // P(type 1 | unit jump) = lambda1 / Lambda

    long long sample(RngStream& rng) const {
        const double u = rng.uniform() * cumulative.back();
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        return static_cast<long long>(it - cumulative.begin()) + 1;
    }
};

JumpLaw build_jump_law(const SubordinatorSpec& spec, double lambda1, double lambda2) {
    const double total_rate = laplace_exponent(spec, lambda1 + lambda2);
    JumpLaw law;
    law.unit_type1_share = lambda1 / (lambda1 + lambda2);
    double cum = 0.0;
    constexpr long long cap = 100000;
    for (long long h = 1; h <= cap; ++h) {
        cum += count_jump_mass_total(spec, lambda1, lambda2, h) / total_rate;
        law.cumulative.push_back(std::min(cum, 1.0));
        if (1.0 - cum < 1e-10)
            return law;
    }
    throw convergence_error("jump law tail too heavy to tabulate (coverage 1e-10 not reached)",
                            cum, cap, 1.0 - cum);
}

SubordinatorSpec clock_of(const ProcessParams& p) {
    if (p.alpha == 1.0)
        return SubordinatorSpec::deterministic(1.0);
    return SubordinatorSpec::tempered_stable(p.alpha, p.theta);
}

} // namespace

std::vector<FailureDraw> simulate_failure_draws(const SubordinatorSpec& spec, double lambda1,
                                                double lambda2, const ThresholdDist& d,
                                                const SimConfig& cfg) {
    cfg.validate();
    const JumpLaw law = build_jump_law(spec, lambda1, lambda2);
    const double total_rate = laplace_exponent(spec, lambda1 + lambda2);
    std::vector<FailureDraw> draws(static_cast<std::size_t>(cfg.paths));
    run_chunks<int>(cfg, [&](int, long long begin, long long end, RngStream& rng) {
        for (long long i = begin; i < end; ++i) {
            FailureDraw& out = draws[static_cast<std::size_t>(i)];
            const long long threshold = d.sample(rng);
            long long level = 0;
            double time = 0.0;
            for (;;) {
                time += rng.exponential() / total_rate;
                if (time > cfg.time_horizon) {
                    out.time = std::numeric_limits<double>::infinity();
                    out.censored = true;
                    break;
                }
                const long long jump = law.sample(rng);
                if (level + jump >= threshold) {
                    out.time = time;
                    out.exact_landing = (level + jump == threshold);
                    if (jump == 1 && level == threshold - 1)
                        out.unit_cause = rng.uniform() < law.unit_type1_share ? 1 : 2;
                    break;
                }
                level += jump;
            }
        }
        return 0;
    });
    return draws;
}

namespace {

SimReport failure_law_report(const SubordinatorSpec& spec, double lambda1, double lambda2,
                             const ThresholdDist& d, const SimConfig& cfg,
                             const ProcessParams* params) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<FailureDraw> draws = simulate_failure_draws(spec, lambda1, lambda2, d, cfg);

    SimReport report;
    report.config = cfg;
    const auto analytic_survival = [&](double t) {
        if (d.kind() == ThresholdKind::geometric)
            return reliability_general_geometric(spec, lambda1, lambda2, d.geometric_p(), t);
        return reliability_series(spec, lambda1, lambda2, d, t);
    };
    for (int g = 1; g <= 10; ++g) {
        const double t = cfg.time_horizon * g / 10.0;
        const long long survivors =
            std::count_if(draws.begin(), draws.end(),
                          [t](const FailureDraw& f) { return f.time > t; });
        report.records.push_back(make_binomial_record("survival(t=" + std::to_string(t) + ")",
                                                      analytic_survival(t), survivors, cfg.paths,
                                                      cfg.z_threshold));
    }
    const long long censored =
        std::count_if(draws.begin(), draws.end(), [](const FailureDraw& f) { return f.censored; });
    report.records.push_back(make_binomial_record("censored", analytic_survival(cfg.time_horizon),
                                                  censored, cfg.paths, cfg.z_threshold));

    if (params != nullptr) {
        // Unit-step cause masses within the horizon against the integrated
        // failure densities.
        for (int n = 1; n <= 2; ++n) {
            const double analytic = integrate_finite(
                [&](double s) { return failure_density(*params, d, n, s); }, 0.0,
                cfg.time_horizon, 1e-10);
            const long long hits = std::count_if(
                draws.begin(), draws.end(),
                [n](const FailureDraw& f) { return f.unit_cause == n; });
            report.records.push_back(make_binomial_record("cause" + std::to_string(n) + "_mass",
                                                          analytic, hits, cfg.paths,
                                                          cfg.z_threshold));
        }
        const double hit_mass = integrate_finite(
            [&](double s) {
                return failure_density(*params, d, 1, s) + failure_density(*params, d, 2, s);
            },
            0.0, cfg.time_horizon, 1e-10);
        const double crossing_mass = 1.0 - analytic_survival(cfg.time_horizon);
        const long long overshoots = std::count_if(
            draws.begin(), draws.end(),
            [](const FailureDraw& f) { return !f.censored && f.unit_cause == 0; });
        report.records.push_back(make_binomial_record("overshoot_mass",
                                                      crossing_mass - hit_mass, overshoots,
                                                      cfg.paths, cfg.z_threshold));
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace

SimReport estimate_failure_law(const ProcessParams& p, const ThresholdDist& d,
                               const SimConfig& cfg) {
    cfg.validate();
    return failure_law_report(clock_of(p), p.lambda1, p.lambda2, d, cfg, &p);
}

SimReport estimate_failure_law(const SubordinatorSpec& spec, double lambda1, double lambda2,
                               const ThresholdDist& d, const SimConfig& cfg) {
    cfg.validate();
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("estimate_failure_law: rates must be positive");
    return failure_law_report(spec, lambda1, lambda2, d, cfg, nullptr);
}

SimReport estimate_subordinator_laplace(const SubordinatorSpec& spec, double t,
                                        const std::vector<double>& u_grid, const SimConfig& cfg) {
    cfg.validate();
    if (u_grid.empty())
        throw std::invalid_argument("estimate_subordinator_laplace: u grid must be nonempty");
    if (!(t > 0.0))
        throw std::domain_error("estimate_subordinator_laplace: t must be positive");
    const auto start = std::chrono::steady_clock::now();

    struct Tally {
        std::vector<double> sum, sum_sq;
    };
    auto tallies = run_chunks<Tally>(cfg, [&](int, long long begin, long long end, RngStream& rng) {
        Tally tally{std::vector<double>(u_grid.size(), 0.0),
                    std::vector<double>(u_grid.size(), 0.0)};
        for (long long i = begin; i < end; ++i) {
            const double s = sample_increment(spec, t, rng);
            for (std::size_t j = 0; j < u_grid.size(); ++j) {
                const double v = std::exp(-u_grid[j] * s);
                tally.sum[j] += v;
                tally.sum_sq[j] += v * v;
            }
        }
        return tally;
    });

    SimReport report;
    report.config = cfg;
    const double n = static_cast<double>(cfg.paths);
    for (std::size_t j = 0; j < u_grid.size(); ++j) {
        double sum = 0.0, sum_sq = 0.0;
        for (const auto& tally : tallies) {
            sum += tally.sum[j];
            sum_sq += tally.sum_sq[j];
        }
        ComparisonRecord r;
        r.name = "laplace(u=" + std::to_string(u_grid[j]) + ")";
        r.analytic = std::exp(-t * laplace_exponent(spec, u_grid[j]));
        r.estimate = sum / n;
        const double variance = std::max(sum_sq / n - r.estimate * r.estimate, 0.0);
        r.std_error = std::sqrt(variance / n);
        r.z = r.std_error > 0.0 ? (r.estimate - r.analytic) / r.std_error : 0.0;
        r.pass = std::abs(r.z) <= cfg.z_threshold;
        report.records.push_back(r);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace btsfpp
