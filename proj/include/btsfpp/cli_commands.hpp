#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "btsfpp/monte_carlo.hpp"
#include "btsfpp/process.hpp"
#include "btsfpp/shock.hpp"
#include "btsfpp/subordinator.hpp"
#include "btsfpp/table.hpp"

namespace btsfpp::cli {

/// `name:key=value,key=value` grammar, e.g. "geometric:p=0.3",
/// "yule-simon:rho=1.5", "mixture:lomax,a=3,b=-0.5", "empirical:q=0.2|0.3|0.5".
ThresholdDist parse_threshold(const std::string& spec);

/// e.g. "tss:alpha=0.7,theta=1", "stable:alpha=0.6", "gamma:shape=2,rate=3",
/// "deterministic:eta=1".
SubordinatorSpec parse_subordinator(const std::string& spec);

/// JSON alternative mirroring the string grammar:
/// {"name": "geometric", "p": 0.3} or {"name": "mixture", "law": "lomax", ...}.
ThresholdDist threshold_from_json(const std::string& path);
SubordinatorSpec subordinator_from_json(const std::string& path);

/// "start:stop:steps" with steps points inclusive of both ends.
struct TimeGrid {
    double start = 0.0;
    double stop = 5.0;
    long long steps = 101;

    static TimeGrid parse(const std::string& text);
    std::vector<double> points() const;
};

struct ProcessFlags {
    double alpha = 0.5;
    double theta = 1.0;
    double lambda1 = 1.0;
    double lambda2 = 2.0;

    ProcessParams to_params() const { return {alpha, theta, lambda1, lambda2}; }
};

struct PmfOptions {
    ProcessFlags process;
    double t = 1.0;
    long long max_h = 6;
    std::string route = "both"; // wright | derivative | both
};

OutputTable cmd_pmf(const PmfOptions& opt);

struct ReliabilityOptions {
    ProcessFlags process;
    std::string threshold = "geometric:p=0.5";
    std::string config;       // JSON threshold spec; takes precedence when nonempty
    std::string subordinator; // empty: tempered-stable clock from the process flags
    TimeGrid grid;
    bool compare = false;
};

OutputTable cmd_reliability(const ReliabilityOptions& opt);

struct HazardOptions {
    ProcessFlags process;
    int n = 1;
    long long k1 = 0;
    long long k2 = 0;
    TimeGrid grid{0.1, 2.0, 20};
    long long h_cap = kDerivativeRouteCap;
};

OutputTable cmd_hazard(const HazardOptions& opt);

struct SimulateOptions {
    ProcessFlags process;
    std::string quantity = "pmf"; // pmf | failure | laplace
    long long paths = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
    double t = 1.0;
    double horizon = 6.0;
    std::string threshold = "geometric:p=0.4";
    std::string subordinator; // empty: clock from the process flags
    std::vector<double> u_grid = {0.5, 1.0, 2.0, 4.0};
    bool dump_failures = false;
};

struct SimulateResult {
    SimReport report;
    std::string failures_csv; // per-path failure times when requested
};

SimulateResult cmd_simulate(const SimulateOptions& opt);

struct FiguresOptions {
    int figure = 1; // 1: uniform mixture, 2: lomax, 3: weibull
    std::string out_dir = ".";
    std::vector<double> alphas = {0.2, 0.4, 0.6, 0.8};
    std::vector<double> thetas = {0.5, 1.0, 1.5, 2.0};
    TimeGrid grid;
};

/// Writes two CSVs (alpha sweep with theta = 1, theta sweep with alpha = 0.5,
/// both at lambda1 = lambda2 = 1) and returns the file paths.
std::vector<std::string> cmd_figures(const FiguresOptions& opt);

/// Reliability value behind the figures; exposed for verification.
double figure_value(int figure, double alpha, double theta, double t);

} // namespace btsfpp::cli
