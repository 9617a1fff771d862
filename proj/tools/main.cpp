#include <clocale>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leland/config.hpp"
#include "leland/simulate.hpp"

namespace {

using namespace leland;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const char* regime_name(BarrierRegime regime) {
    switch (regime) {
        case BarrierRegime::SmoothFitRoot: return "smooth-fit-root";
        case BarrierRegime::ZeroBarrier: return "zero-barrier";
        case BarrierRegime::ContinuousFitRoot: return "continuous-fit-root";
    }
    return "?";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << num(row[i]);
        out << "\n";
    }
}

BarrierSolution solve_barrier(const FluctuationContext& ctx, const MarketParams& mkt,
                              ObservationMode mode) {
    return mode == ObservationMode::Periodic ? solve_barrier_periodic(ctx, mkt)
                                             : solve_barrier_continuous(ctx, mkt);
}

ValuationResult value(const FluctuationContext& ctx, const MarketParams& mkt,
                      ObservationMode mode, double V, double V_B) {
    return mode == ObservationMode::Periodic ? value_periodic(ctx, mkt, V, V_B)
                                             : value_continuous(ctx, mkt, V, V_B);
}

struct Cli {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 12345;
    bool no_calibrate = false;

    RunConfig cfg;

    void load() {
        cfg = RunConfig::load(config_path);
        if (!out_path.empty()) cfg.csv_path = out_path;
    }
};

int cmd_barrier(Cli& cli) {
    FluctuationContext ctx(cli.cfg.build_model(cli.no_calibrate));
    MarketParams mkt = cli.cfg.build_market();
    BarrierSolution sol = solve_barrier(ctx, mkt, cli.cfg.mode);
    std::cout << "barrier=" << num(sol.barrier) << "\n"
              << "regime=" << regime_name(sol.regime) << "\n"
              << "residual=" << num(sol.residual) << "\n"
              << "iterations=" << sol.iterations << "\n"
              << "phi_r=" << num(ctx.phi(mkt.r)) << "\n"
              << "phi_rm=" << num(ctx.phi(mkt.r + mkt.m)) << "\n";
    if (mkt.lambda) {
        std::cout << "phi_lr=" << num(ctx.phi(*mkt.lambda + mkt.r)) << "\n"
                  << "phi_lrm=" << num(ctx.phi(*mkt.lambda + mkt.r + mkt.m)) << "\n";
    }
    if (!sol.note.empty()) std::cout << "note=" << sol.note << "\n";
    return 0;
}

int cmd_value(Cli& cli, double V, std::optional<double> V_B) {
    FluctuationContext ctx(cli.cfg.build_model(cli.no_calibrate));
    MarketParams mkt = cli.cfg.build_market();
    double barrier = V_B ? *V_B : solve_barrier(ctx, mkt, cli.cfg.mode).barrier;
    ValuationResult val = value(ctx, mkt, cli.cfg.mode, V, barrier);
    std::cout << "V=" << num(V) << "\n"
              << "V_B=" << num(barrier) << "\n"
              << "firm=" << num(val.firm) << "\n"
              << "debt=" << num(val.debt) << "\n"
              << "equity=" << num(val.equity) << "\n";
    if (cli.cfg.csv_path)
        write_csv(*cli.cfg.csv_path, {"V", "V_B", "firm", "debt", "equity"},
                  {{V, barrier, val.firm, val.debt, val.equity}});
    return 0;
}

int cmd_sweep(Cli& cli, const std::string& variable, const std::vector<double>& grid, double V) {
    if (!cli.cfg.csv_path)
        throw std::invalid_argument("sweep needs an output file (--out or output.csv)");
    LevyModel base = cli.cfg.build_model(cli.no_calibrate);
    std::vector<std::vector<double>> rows;
    for (double g : grid) {
        RunConfig cfg = cli.cfg;
        LevyModel model = base;
        if (variable == "lambda") {
            if (cfg.mode != ObservationMode::Periodic)
                throw std::invalid_argument("sweep over lambda needs periodic mode");
            cfg.lambda = g;
        } else if (variable == "jump_rate") {
            model = base.with_jump_rate(g); // drift held fixed
        } else if (variable == "P") {
            cfg.P = g;
        } else if (variable != "V_B") {
            throw std::invalid_argument("sweep variable must be lambda, jump_rate, V_B or P");
        }
        FluctuationContext ctx(model);
        MarketParams mkt = cfg.build_market();
        double barrier = (variable == "V_B") ? g : solve_barrier(ctx, mkt, cfg.mode).barrier;
        ValuationResult val = value(ctx, mkt, cfg.mode, V, barrier);
        rows.push_back({g, barrier, val.firm, val.debt, val.equity});
    }
    write_csv(*cli.cfg.csv_path, {variable, "barrier", "firm", "debt", "equity"}, rows);
    std::cout << "rows=" << rows.size() << "\n";
    return 0;
}

int cmd_two_stage(Cli& cli, double V) {
    FluctuationContext ctx(cli.cfg.build_model(cli.no_calibrate));
    MarketParams mkt = cli.cfg.build_market();
    if (cli.cfg.vt_rule == TaxThresholdRule::Zero && mkt.V_T != 0.0)
        throw std::invalid_argument("two-stage needs market.V_T = 0 or \"P*rho/delta\"");
    TwoStageSolution sol = two_stage(ctx, mkt, V, cli.cfg.mode, cli.cfg.vt_rule);
    std::cout << "P_star=" << num(sol.P_star) << "\n"
              << "barrier=" << num(sol.barrier) << "\n"
              << "firm=" << num(sol.firm_value) << "\n"
              << "leverage=" << num(sol.leverage) << "\n"
              << "non_unimodal_warning=" << (sol.non_unimodal_warning ? 1 : 0) << "\n";
    if (cli.cfg.csv_path)
        write_csv(*cli.cfg.csv_path, {"P_star", "barrier", "firm", "leverage"},
                  {{sol.P_star, sol.barrier, sol.firm_value, sol.leverage}});
    return 0;
}

int cmd_simulate(Cli& cli, double V, std::optional<double> V_B, long paths) {
    LevyModel model = cli.cfg.build_model(cli.no_calibrate);
    FluctuationContext ctx(model);
    MarketParams mkt = cli.cfg.build_market();
    double barrier = V_B ? *V_B : solve_barrier(ctx, mkt, cli.cfg.mode).barrier;
    SimConfig sim;
    sim.paths = paths;
    sim.seed = cli.seed;
    double closed, mean, se;
    if (cli.cfg.mode == ObservationMode::Periodic) {
        closed = value_periodic(ctx, mkt, V, barrier).equity;
        McEstimate est = mc_periodic_equity(model, mkt, V, barrier, sim);
        mean = est.mean;
        se = est.std_error;
    } else {
        double x = std::log(V / barrier);
        closed = 1.0 - gamma_fn(ctx, x, mkt.r);
        McEstimate est = mc_continuous_passage(model, x, mkt.r, sim);
        mean = est.mean;
        se = est.std_error;
    }
    double z = se > 0.0 ? (mean - closed) / se : 0.0;
    std::cout << "estimate=" << num(mean) << "\n"
              << "std_error=" << num(se) << "\n"
              << "closed_form=" << num(closed) << "\n"
              << "z=" << num(z) << "\n";
    if (cli.cfg.csv_path)
        write_csv(*cli.cfg.csv_path, {"estimate", "std_error", "closed_form", "z"},
                  {{mean, se, closed, z}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"Optimal endogenous bankruptcy barriers and firm/debt/equity "
                 "values under continuous and Poisson-observed default"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "configuration file")->required();
    app.add_option("--out", cli.out_path, "CSV output path (overrides output.csv)");
    app.add_option("--seed", cli.seed, "simulation seed");
    app.add_flag("--no-calibrate", cli.no_calibrate, "use the configured drift as-is");

    auto* barrier = app.add_subcommand("barrier", "solve the optimal bankruptcy barrier");

    double V = 100.0;
    std::optional<double> V_B;
    auto* value_cmd = app.add_subcommand("value", "firm/debt/equity at a given asset value");
    value_cmd->add_option("--V", V, "asset value")->required();
    value_cmd->add_option("--VB", V_B, "barrier (defaults to the solved optimum)");

    std::string variable;
    std::vector<double> grid;
    double sweep_V = 100.0;
    auto* sweep = app.add_subcommand("sweep", "sweep a parameter and emit a CSV");
    sweep->add_option("--variable", variable, "lambda | jump_rate | V_B | P")->required();
    sweep->add_option("--grid", grid, "grid values")->required()->delimiter(',');
    sweep->add_option("--V", sweep_V, "asset value for the valuation columns");

    double ts_V = 100.0;
    auto* two_stage_cmd = app.add_subcommand("two-stage", "optimal leverage");
    two_stage_cmd->add_option("--V", ts_V, "asset value");

    double sim_V = 100.0;
    std::optional<double> sim_VB;
    long paths = 100000;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo cross-check");
    simulate_cmd->add_option("--V", sim_V, "asset value")->required();
    simulate_cmd->add_option("--VB", sim_VB, "barrier (defaults to the solved optimum)");
    simulate_cmd->add_option("--paths", paths, "number of paths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : 0;
    }

    try {
        cli.load();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (barrier->parsed()) return cmd_barrier(cli);
        if (value_cmd->parsed()) return cmd_value(cli, V, V_B);
        if (sweep->parsed()) return cmd_sweep(cli, variable, grid, sweep_V);
        if (two_stage_cmd->parsed()) return cmd_two_stage(cli, ts_V);
        if (simulate_cmd->parsed()) return cmd_simulate(cli, sim_V, sim_VB, paths);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
