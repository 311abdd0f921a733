#include "btsfpp/cli_commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace btsfpp::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string field;
    while (std::getline(is, field, sep))
        out.push_back(field);
    return out;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": '" + text + "' is not a number");
    }
}

struct ParsedSpec {
    std::string name;
    std::string subname; // first bare token after ':' (mixture law)
    std::map<std::string, std::string> params;
};

ParsedSpec parse_spec_string(const std::string& spec) {
    ParsedSpec out;
    const auto colon = spec.find(':');
    out.name = spec.substr(0, colon);
    if (colon == std::string::npos)
        return out;
    for (const auto& item : split(spec.substr(colon + 1), ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            if (!out.subname.empty())
                throw std::invalid_argument("spec '" + spec + "': unexpected token '" + item + "'");
            out.subname = item;
        } else {
            out.params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    return out;
}

double require_param(const ParsedSpec& spec, const std::string& key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end())
        throw std::invalid_argument("spec '" + spec.name + "': missing parameter '" + key + "'");
    return parse_number(it->second, "parameter '" + key + "'");
}

MixingLaw mixing_from(const std::string& law, const ParsedSpec& spec) {
    if (law == "uniform")
        return MixingLaw::uniform();
    if (law == "lomax")
        return MixingLaw::truncated_lomax(require_param(spec, "a"), require_param(spec, "b"));
    if (law == "weibull")
        return MixingLaw::truncated_weibull(require_param(spec, "a"), require_param(spec, "b"),
                                            require_param(spec, "c"));
    if (law == "point")
        return MixingLaw::point_mass(require_param(spec, "p"));
    throw std::invalid_argument("unknown mixing law '" + law +
                                "' (expected uniform|lomax|weibull|point)");
}

ThresholdDist threshold_from(const ParsedSpec& spec) {
    if (spec.name == "geometric")
        return ThresholdDist::geometric(require_param(spec, "p"));
    if (spec.name == "discrete-exponential")
        return ThresholdDist::discrete_exponential();
    if (spec.name == "yule-simon")
        return ThresholdDist::yule_simon(require_param(spec, "rho"));
    if (spec.name == "deterministic")
        return ThresholdDist::deterministic(static_cast<long long>(require_param(spec, "m")));
    if (spec.name == "empirical") {
        const auto it = spec.params.find("q");
        if (it == spec.params.end())
            throw std::invalid_argument("empirical threshold: missing 'q' list (q=q1|q2|...)");
        std::vector<double> pmf;
        for (const auto& item : split(it->second, '|'))
            pmf.push_back(parse_number(item, "empirical pmf entry"));
        return ThresholdDist::empirical(std::move(pmf));
    }
    if (spec.name == "mixture") {
        if (spec.subname.empty())
            throw std::invalid_argument("mixture threshold: expected mixture:<law>[,k=v...]");
        return ThresholdDist::geometric_mixture(mixing_from(spec.subname, spec));
    }
    throw std::invalid_argument("unknown threshold '" + spec.name +
                                "' (expected geometric|discrete-exponential|yule-simon|"
                                "deterministic|empirical|mixture)");
}

SubordinatorSpec subordinator_from(const ParsedSpec& spec) {
    if (spec.name == "tss")
        return SubordinatorSpec::tempered_stable(require_param(spec, "alpha"),
                                                 require_param(spec, "theta"));
    if (spec.name == "stable")
        return SubordinatorSpec::stable(require_param(spec, "alpha"));
    if (spec.name == "gamma")
        return SubordinatorSpec::gamma_process(require_param(spec, "shape"),
                                               require_param(spec, "rate"));
    if (spec.name == "deterministic")
        return SubordinatorSpec::deterministic(require_param(spec, "eta"));
    throw std::invalid_argument("unknown subordinator '" + spec.name +
                                "' (expected tss|stable|gamma|deterministic)");
}

ParsedSpec parsed_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    if (!j.is_object() || !j.contains("name"))
        throw std::invalid_argument("config: expected an object with a 'name' field");
    ParsedSpec out;
    out.name = j["name"].get<std::string>();
    for (const auto& [key, value] : j.items()) {
        if (key == "name")
            continue;
        if (key == "law") {
            out.subname = value.get<std::string>();
        } else if (key == "q" && value.is_array()) {
            std::string list;
            for (const auto& v : value)
                list += (list.empty() ? "" : "|") + format_double(v.get<double>());
            out.params["q"] = list;
        } else {
            out.params[key] = value.is_string() ? value.get<std::string>()
                                                : format_double(value.get<double>());
        }
    }
    return out;
}

} // namespace

ThresholdDist parse_threshold(const std::string& spec) {
    return threshold_from(parse_spec_string(spec));
}

SubordinatorSpec parse_subordinator(const std::string& spec) {
    return subordinator_from(parse_spec_string(spec));
}

ThresholdDist threshold_from_json(const std::string& path) {
    return threshold_from(parsed_from_json(path));
}

SubordinatorSpec subordinator_from_json(const std::string& path) {
    return subordinator_from(parsed_from_json(path));
}

TimeGrid TimeGrid::parse(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw std::invalid_argument("t-grid: expected start:stop:steps");
    TimeGrid grid;
    grid.start = parse_number(parts[0], "t-grid start");
    grid.stop = parse_number(parts[1], "t-grid stop");
    grid.steps = static_cast<long long>(parse_number(parts[2], "t-grid steps"));
    if (grid.steps < 2 || !(grid.stop > grid.start))
        throw std::invalid_argument("t-grid: requires stop > start and steps >= 2");
    return grid;
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (long long i = 0; i < steps; ++i)
        out[static_cast<std::size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return out;
}

OutputTable cmd_pmf(const PmfOptions& opt) {
    const ProcessParams p = opt.process.to_params();
    if (!(opt.t > 0.0))
        throw std::invalid_argument("--t must be positive (the series routes require t > 0)");
    if (opt.max_h < 0)
        throw std::invalid_argument("--max-h must be nonnegative");
    const bool both = opt.route == "both";
    if (!both && opt.route != "wright" && opt.route != "derivative")
        throw std::invalid_argument("--route must be one of wright|derivative|both");
    if ((both || opt.route == "derivative") && opt.max_h > kDerivativeRouteCap)
        throw std::invalid_argument("--max-h exceeds the derivative-route cap " +
                                    std::to_string(kDerivativeRouteCap));
    OutputTable table;
    table.columns = {"k1", "k2", "probability"};
    if (both)
        table.columns.push_back("route_difference");
    for (long long h = 0; h <= opt.max_h; ++h) {
        for (long long k1 = 0; k1 <= h; ++k1) {
            const BivariateCount k(k1, h - k1);
            std::vector<double> row{static_cast<double>(k.k1), static_cast<double>(k.k2)};
            if (both) {
                const double w = btsfpp_pmf_wright(p, k, opt.t);
                const double d = btsfpp_pmf_derivative(p, k, opt.t);
                row.push_back(d);
                row.push_back(std::abs(w - d));
            } else if (opt.route == "wright") {
                row.push_back(btsfpp_pmf_wright(p, k, opt.t));
            } else {
                row.push_back(btsfpp_pmf_derivative(p, k, opt.t));
            }
            table.append_row(std::move(row));
        }
    }
    return table;
}

namespace {

bool near(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Closed-form reliability where one exists for the threshold/clock pair.
double closed_form_reliability(const ProcessParams& p, const SubordinatorSpec& clock,
                               const ThresholdDist& d, double t, bool clock_is_default) {
    const double lam = p.lambda1 + p.lambda2;
    switch (d.kind()) {
    case ThresholdKind::geometric:
        return std::exp(-t * laplace_exponent(clock, lam * d.geometric_p()));
    case ThresholdKind::discrete_exponential:
        return std::exp(-t * laplace_exponent(clock, lam * (1.0 - std::exp(-1.0))));
    case ThresholdKind::yule_simon:
        if (!clock_is_default)
            throw std::invalid_argument(
                "--compare: the yule-simon integral form needs the tempered-stable clock");
        return reliability_yule_simon(p, d.rho(), t);
    case ThresholdKind::geometric_mixture: {
        if (!clock_is_default)
            throw std::invalid_argument(
                "--compare: mixture closed forms need the tempered-stable clock");
        const MixingLaw& g = d.mixing();
        switch (g.kind()) {
        case MixingKind::uniform:
            return reliability_uniform_closed(p, t);
        case MixingKind::truncated_lomax:
            if (!near(g.a(), lam / p.theta) || !near(g.b(), p.alpha - 1.0))
                throw std::invalid_argument(
                    "--compare: lomax closed form requires a=Lambda/theta and b=alpha-1");
            return reliability_lomax_closed(p, t);
        case MixingKind::truncated_weibull:
            if (!near(g.a(), 1.0 / lam) || !near(g.b(), p.alpha) || !near(g.c(), -p.theta / lam))
                throw std::invalid_argument(
                    "--compare: weibull closed form requires a=1/Lambda, b=alpha, c=-theta/Lambda");
            return reliability_weibull_closed(p, t);
        case MixingKind::point_mass:
            return reliability_general_geometric(clock, p.lambda1, p.lambda2, g.point(), t);
        }
        throw std::logic_error("unknown mixing law");
    }
    default:
        throw std::invalid_argument("--compare: no closed form for this threshold");
    }
}

} // namespace

OutputTable cmd_reliability(const ReliabilityOptions& opt) {
    const ProcessParams p = opt.process.to_params();
    const ThresholdDist d =
        opt.config.empty() ? parse_threshold(opt.threshold) : threshold_from_json(opt.config);
    const bool clock_is_default = opt.subordinator.empty();
    const SubordinatorSpec clock =
        clock_is_default ? (p.alpha == 1.0 ? SubordinatorSpec::deterministic(1.0)
                                           : SubordinatorSpec::tempered_stable(p.alpha, p.theta))
                         : parse_subordinator(opt.subordinator);
    const bool mixture = d.kind() == ThresholdKind::geometric_mixture;

    OutputTable table;
    table.columns = {"t", "reliability"};
    if (opt.compare) {
        table.columns.push_back("closed_form");
        if (mixture)
            table.columns.push_back("series");
    }
    for (double t : opt.grid.points()) {
        const double primary = mixture
                                   ? reliability_mixture(clock, p.lambda1, p.lambda2, d.mixing(), t)
                                   : reliability_series(clock, p.lambda1, p.lambda2, d, t);
        std::vector<double> row{t, primary};
        if (opt.compare) {
            row.push_back(closed_form_reliability(p, clock, d, t, clock_is_default));
            if (mixture)
                row.push_back(reliability_series(clock, p.lambda1, p.lambda2, d, t));
        }
        table.append_row(std::move(row));
    }
    return table;
}

OutputTable cmd_hazard(const HazardOptions& opt) {
    const ProcessParams p = opt.process.to_params();
    if (opt.n != 1 && opt.n != 2)
        throw std::invalid_argument("--n must be 1 or 2");
    const BivariateCount k(opt.k1, opt.k2);
    if (k.total() > opt.h_cap)
        throw std::invalid_argument("k1 + k2 exceeds the derivative cap; raise --h-cap (hard limit " +
                                    std::to_string(kDerivativeRouteCap) + ")");
    OutputTable table;
    table.columns = {"t", "hazard", "hazard_closed", "difference"};
    const double closed = hazard_rate_closed(p, opt.n);
    for (double t : opt.grid.points()) {
        if (!(t > 0.0))
            throw std::invalid_argument("hazard t-grid must be positive");
        const double literal = hazard_rate(p, opt.n, k, t);
        table.append_row({t, literal, closed, std::abs(literal - closed)});
    }
    return table;
}

SimulateResult cmd_simulate(const SimulateOptions& opt) {
    const ProcessParams p = opt.process.to_params();
    SimConfig cfg;
    cfg.paths = opt.paths;
    cfg.master_seed = opt.seed;
    cfg.worker_count = opt.workers;
    cfg.time_horizon = opt.quantity == "pmf" ? opt.t : opt.horizon;
    SimulateResult result;
    if (opt.quantity == "pmf") {
        result.report = estimate_pmf(p, opt.t, cfg);
        return result;
    }
    if (opt.quantity == "laplace") {
        const SubordinatorSpec spec =
            opt.subordinator.empty()
                ? (p.alpha == 1.0 ? SubordinatorSpec::deterministic(1.0)
                                  : SubordinatorSpec::tempered_stable(p.alpha, p.theta))
                : parse_subordinator(opt.subordinator);
        result.report = estimate_subordinator_laplace(spec, opt.t, opt.u_grid, cfg);
        return result;
    }
    if (opt.quantity != "failure")
        throw std::invalid_argument("--quantity must be one of pmf|failure|laplace");
    const ThresholdDist d = parse_threshold(opt.threshold);
    if (opt.subordinator.empty()) {
        result.report = estimate_failure_law(p, d, cfg);
    } else {
        result.report =
            estimate_failure_law(parse_subordinator(opt.subordinator), p.lambda1, p.lambda2, d, cfg);
    }
    if (opt.dump_failures) {
        const SubordinatorSpec spec =
            opt.subordinator.empty()
                ? (p.alpha == 1.0 ? SubordinatorSpec::deterministic(1.0)
                                  : SubordinatorSpec::tempered_stable(p.alpha, p.theta))
                : parse_subordinator(opt.subordinator);
        const auto draws = simulate_failure_draws(spec, p.lambda1, p.lambda2, d, cfg);
        OutputTable table;
        table.columns = {"path", "failure_time", "unit_cause", "censored", "exact_landing"};
        for (std::size_t i = 0; i < draws.size(); ++i) {
            table.append_row({static_cast<double>(i), draws[i].time,
                              static_cast<double>(draws[i].unit_cause),
                              draws[i].censored ? 1.0 : 0.0, draws[i].exact_landing ? 1.0 : 0.0});
        }
        result.failures_csv = table.to_csv();
    }
    return result;
}

double figure_value(int figure, double alpha, double theta, double t) {
    const ProcessParams p(alpha, theta, 1.0, 1.0);
    switch (figure) {
    case 1:
        return reliability_uniform_closed(p, t);
    case 2:
        return reliability_lomax_closed(p, t);
    case 3:
        return reliability_weibull_closed(p, t);
    default:
        throw std::invalid_argument("--figure must be 1, 2 or 3");
    }
}

std::vector<std::string> cmd_figures(const FiguresOptions& opt) {
    if (opt.figure < 1 || opt.figure > 3)
        throw std::invalid_argument("--figure must be 1, 2 or 3");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    const auto times = opt.grid.points();

    const auto write_sweep = [&](const std::string& file_name, const std::string& key,
                                 const std::vector<double>& values, bool sweep_alpha) {
        OutputTable table;
        table.columns = {"t"};
        for (double v : values)
            table.columns.push_back(key + "=" + format_double(v));
        for (double t : times) {
            std::vector<double> row{t};
            for (double v : values)
                row.push_back(sweep_alpha ? figure_value(opt.figure, v, 1.0, t)
                                          : figure_value(opt.figure, 0.5, v, t));
            table.append_row(std::move(row));
        }
        const fs::path path = fs::path(opt.out_dir) / file_name;
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("figures: cannot write '" + path.string() + "'");
        table.write_csv(out);
        if (!out)
            throw std::runtime_error("figures: write failed for '" + path.string() + "'");
        return path.string();
    };

    const std::string base = "figure" + std::to_string(opt.figure);
    std::vector<std::string> written;
    written.push_back(write_sweep(base + "_alpha_sweep.csv", "alpha", opt.alphas, true));
    written.push_back(write_sweep(base + "_theta_sweep.csv", "theta", opt.thetas, false));
    return written;
}

} // namespace btsfpp::cli
