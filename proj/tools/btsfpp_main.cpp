#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "btsfpp/cli_commands.hpp"
#include "btsfpp/errors.hpp"

namespace {

using namespace btsfpp;
using namespace btsfpp::cli;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

void add_process_flags(CLI::App* cmd, ProcessFlags& flags) {
    cmd->add_option("--alpha", flags.alpha, "stability index in (0,1]")->capture_default_str();
    cmd->add_option("--theta", flags.theta, "tempering parameter >= 0")->capture_default_str();
    cmd->add_option("--lambda1", flags.lambda1, "type-1 shock rate")->capture_default_str();
    cmd->add_option("--lambda2", flags.lambda2, "type-2 shock rate")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bivariate tempered space-fractional Poisson process toolkit"};
    app.require_subcommand(1);

    PmfOptions pmf_opt;
    std::string pmf_out;
    auto* pmf_cmd = app.add_subcommand("pmf", "joint probability mass function table");
    add_process_flags(pmf_cmd, pmf_opt.process);
    pmf_cmd->add_option("--t", pmf_opt.t, "evaluation time, must be > 0")->capture_default_str();
    pmf_cmd->add_option("--max-h", pmf_opt.max_h, "largest total count")->capture_default_str();
    pmf_cmd->add_option("--route", pmf_opt.route, "wright|derivative|both")->capture_default_str();
    pmf_cmd->add_option("--out", pmf_out, "output CSV path (default stdout)");

    ReliabilityOptions rel_opt;
    std::string rel_out, rel_grid = "0:5:101";
    auto* rel_cmd = app.add_subcommand("reliability", "failure-time reliability curve");
    add_process_flags(rel_cmd, rel_opt.process);
    rel_cmd->add_option("--threshold", rel_opt.threshold,
                        "threshold spec, e.g. geometric:p=0.3, yule-simon:rho=1.5, mixture:uniform")
        ->capture_default_str();
    rel_cmd->add_option("--config", rel_opt.config, "JSON file with the threshold spec");
    rel_cmd->add_option("--subordinator", rel_opt.subordinator,
                        "clock spec, e.g. tss:alpha=0.7,theta=1 (default: from --alpha/--theta)");
    rel_cmd->add_option("--t-grid", rel_grid, "start:stop:steps")->capture_default_str();
    rel_cmd->add_flag("--compare", rel_opt.compare, "add closed-form/series comparison columns");
    rel_cmd->add_option("--out", rel_out, "output CSV path (default stdout)");

    HazardOptions haz_opt;
    std::string haz_out, haz_grid = "0.1:2:20";
    auto* haz_cmd = app.add_subcommand("hazard", "per-state hazard rates");
    add_process_flags(haz_cmd, haz_opt.process);
    haz_cmd->add_option("--n", haz_opt.n, "shock type, 1 or 2")->capture_default_str();
    haz_cmd->add_option("--k1", haz_opt.k1, "component-1 count")->capture_default_str();
    haz_cmd->add_option("--k2", haz_opt.k2, "component-2 count")->capture_default_str();
    haz_cmd->add_option("--t-grid", haz_grid, "start:stop:steps")->capture_default_str();
    haz_cmd->add_option("--h-cap", haz_opt.h_cap, "largest admitted k1+k2")->capture_default_str();
    haz_cmd->add_option("--out", haz_out, "output CSV path (default stdout)");

    SimulateOptions sim_opt;
    std::string sim_out, sim_dump;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo verification report");
    add_process_flags(sim_cmd, sim_opt.process);
    sim_cmd->add_option("--quantity", sim_opt.quantity, "pmf|failure|laplace")
        ->capture_default_str();
    sim_cmd->add_option("--paths", sim_opt.paths, "number of simulated paths")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_opt.seed, "master seed")
        ->envname("BTSFPP_SEED")
        ->capture_default_str();
    sim_cmd->add_option("--workers", sim_opt.workers, "worker count")->capture_default_str();
    sim_cmd->add_option("--t", sim_opt.t, "evaluation time (pmf/laplace)")->capture_default_str();
    sim_cmd->add_option("--horizon", sim_opt.horizon, "simulation horizon (failure)")
        ->capture_default_str();
    sim_cmd->add_option("--threshold", sim_opt.threshold, "threshold spec (failure)")
        ->capture_default_str();
    sim_cmd->add_option("--subordinator", sim_opt.subordinator, "clock spec override");
    sim_cmd->add_option("--u-grid", sim_opt.u_grid, "Laplace argument grid (laplace)")
        ->capture_default_str();
    sim_cmd->add_option("--dump-failures", sim_dump, "CSV path for raw per-path failure times");
    sim_cmd->add_option("--out", sim_out, "report JSON path (default stdout)");

    FiguresOptions fig_opt;
    std::string fig_grid = "0:5:101";
    auto* fig_cmd = app.add_subcommand("figures", "reliability-curve data behind the figures");
    fig_cmd->add_option("--figure", fig_opt.figure, "1: uniform, 2: lomax, 3: weibull")
        ->capture_default_str();
    fig_cmd->add_option("--out", fig_opt.out_dir, "output directory")->required();
    fig_cmd->add_option("--alphas", fig_opt.alphas, "alpha sweep values")->capture_default_str();
    fig_cmd->add_option("--thetas", fig_opt.thetas, "theta sweep values")->capture_default_str();
    fig_cmd->add_option("--t-grid", fig_grid, "start:stop:steps")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (pmf_cmd->parsed()) {
            write_output(cmd_pmf(pmf_opt).to_csv(), pmf_out);
        } else if (rel_cmd->parsed()) {
            rel_opt.grid = TimeGrid::parse(rel_grid);
            write_output(cmd_reliability(rel_opt).to_csv(), rel_out);
        } else if (haz_cmd->parsed()) {
            haz_opt.grid = TimeGrid::parse(haz_grid);
            write_output(cmd_hazard(haz_opt).to_csv(), haz_out);
        } else if (sim_cmd->parsed()) {
            sim_opt.dump_failures = !sim_dump.empty();
            SimulateResult result = cmd_simulate(sim_opt);
            write_output(result.report.to_json().dump(2) + "\n", sim_out);
            if (!sim_dump.empty())
                write_output(result.failures_csv, sim_dump);
            std::cerr << "runtime: " << result.report.runtime_seconds << " s\n";
        } else if (fig_cmd->parsed()) {
            fig_opt.grid = TimeGrid::parse(fig_grid);
            for (const auto& path : cmd_figures(fig_opt))
                std::cerr << "wrote " << path << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
