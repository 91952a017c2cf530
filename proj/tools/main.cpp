// rsmalat: min-max latency resource allocation experiments for uplink RSMA.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsma/baselines.hpp"
#include "rsma/errors.hpp"
#include "rsma/experiment.hpp"
#include "rsma/jsonio.hpp"
#include "rsma/pairalloc.hpp"
#include "rsma/report.hpp"
#include "rsma/scene.hpp"

namespace {

void add_drop_flags(CLI::App* cmd, rsma::DropConfig& cfg) {
    cmd->add_option("--n", cfg.n_users, "number of users");
    cmd->add_option("--radius-km", cfg.cell_radius_km, "cell radius in km");
    cmd->add_option("--pl-intercept-db", cfg.pl_intercept_db, "path loss intercept, dB");
    cmd->add_option("--pl-slope-db", cfg.pl_slope_db_per_decade, "path loss slope per decade, dB");
    cmd->add_option("--bytes-min", cfg.packet_bytes_min, "minimum packet size, bytes");
    cmd->add_option("--bytes-max", cfg.packet_bytes_max, "maximum packet size, bytes");
    cmd->add_option("--pmax-dbm", cfg.p_max_dbm, "per-user power cap, dBm");
    cmd->add_option("--bandwidth-hz", cfg.bandwidth_hz, "total bandwidth, Hz");
    cmd->add_option("--noise-dbm-hz", cfg.noise_dbm_per_hz, "noise PSD, dBm/Hz");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

std::vector<rsma::Scheme> parse_schemes(const std::vector<std::string>& names) {
    std::vector<rsma::Scheme> out;
    for (const std::string& n : names) out.push_back(rsma::scheme_from_string(n));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"min-max latency allocation for uplink RSMA: solvers, baselines and sweeps"};
    app.require_subcommand(1);

    // gen -------------------------------------------------------------------
    rsma::DropConfig gen_cfg;
    std::string gen_out = "-";
    CLI::App* gen = app.add_subcommand("gen", "generate a random scenario JSON");
    add_drop_flags(gen, gen_cfg);
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // solve -----------------------------------------------------------------
    std::string solve_scenario, solve_scheme = "paired-rsma";
    double solve_eps = 1e-9, solve_split_ratio = 0.5;
    int solve_enum_grid = 64;
    CLI::App* solve = app.add_subcommand("solve", "solve one scenario with one scheme");
    solve->add_option("--scenario", solve_scenario, "scenario JSON file")->required();
    solve->add_option("--scheme", solve_scheme,
                      "paired-rsma | unpaired-rsma-oracle | rsma-suboptimal | rsma-enum | "
                      "paired-noma | unpaired-noma");
    solve->add_option("--eps", solve_eps, "bisection tolerance, seconds");
    solve->add_option("--split-ratio", solve_split_ratio, "rsma-suboptimal rate split");
    solve->add_option("--grid", solve_enum_grid, "rsma-enum per-user split grid points");

    // sweep -----------------------------------------------------------------
    rsma::SweepSpec sweep_spec;
    std::string sweep_kind = "power";
    std::vector<double> sweep_values;
    std::vector<std::string> sweep_schemes = {"paired-rsma", "paired-noma", "unpaired-noma"};
    std::string sweep_out = "-", sweep_svg;
    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over power or user count");
    add_drop_flags(sweep, sweep_spec.base);
    sweep->add_option("--kind", sweep_kind, "power | users");
    sweep->add_option("--values", sweep_values, "grid values (dBm or user counts)")->required();
    sweep->add_option("--trials", sweep_spec.trials, "trials per grid point");
    sweep->add_option("--schemes", sweep_schemes, "schemes to run");
    sweep->add_option("--eps", sweep_spec.eps_s, "bisection tolerance, seconds");
    sweep->add_option("--enum-grid", sweep_spec.enum_split_grid, "rsma-enum split grid");
    sweep->add_flag("--timing", sweep_spec.measure_time,
                    "record wall times (output no longer byte-reproducible)");
    sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");
    sweep->add_option("--svg", sweep_svg, "also write an SVG chart here");

    // trace -----------------------------------------------------------------
    rsma::DropConfig trace_cfg;
    std::string trace_scenario, trace_out = "-", trace_svg;
    double trace_eps = 1e-9;
    CLI::App* trace = app.add_subcommand("trace", "paired-solver bisection trace");
    add_drop_flags(trace, trace_cfg);
    trace->add_option("--scenario", trace_scenario, "scenario JSON (otherwise a drop is generated)");
    trace->add_option("--eps", trace_eps, "bisection tolerance, seconds");
    trace->add_option("--out", trace_out, "CSV output path (default stdout)");
    trace->add_option("--svg", trace_svg, "also write an SVG chart here");

    // bench -----------------------------------------------------------------
    rsma::DropConfig bench_cfg;
    std::vector<int> bench_n = {4, 10, 20, 30, 40};
    int bench_trials = 5;
    double bench_eps = 1e-9;
    std::vector<std::string> bench_schemes = {"paired-rsma", "unpaired-rsma-oracle",
                                              "rsma-suboptimal", "paired-noma",
                                              "unpaired-noma"};
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "median solve times per scheme and user count");
    add_drop_flags(bench, bench_cfg);
    bench->add_option("--n-list", bench_n, "user counts to time");
    bench->add_option("--trials", bench_trials, "trials per point");
    bench->add_option("--schemes", bench_schemes, "schemes to time");
    bench->add_option("--eps", bench_eps, "bisection tolerance, seconds");
    bench->add_option("--out", bench_out, "CSV output path (table always printed)");

    // plot ------------------------------------------------------------------
    std::string plot_in, plot_kind = "power", plot_out;
    CLI::App* plot = app.add_subcommand("plot", "render a sweep or trace CSV as SVG");
    plot->add_option("--in", plot_in, "input CSV")->required();
    plot->add_option("--kind", plot_kind, "power | users | convergence");
    plot->add_option("--out", plot_out, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            write_text(gen_out, rsma::scenario_to_json(rsma::generate_drop(gen_cfg)));
        } else if (*solve) {
            const rsma::Scenario sc = rsma::load_scenario(solve_scenario);
            const rsma::Scheme scheme = rsma::scheme_from_string(solve_scheme);
            if (scheme == rsma::Scheme::PairedRsma) {
                std::cout << rsma::solution_to_json(
                    rsma::solve_min_latency(sc, {solve_eps, std::nullopt}));
            } else if (scheme == rsma::Scheme::RsmaSuboptimal) {
                std::cout << rsma::baseline_to_json(
                    rsma::rsma_suboptimal_solve(sc, {solve_split_ratio}, solve_eps));
            } else if (scheme == rsma::Scheme::RsmaEnumeration) {
                std::cout << rsma::baseline_to_json(
                    rsma::rsma_order_enumeration_solve(sc, solve_enum_grid, solve_eps));
            } else if (scheme == rsma::Scheme::UnpairedRsmaOracle) {
                std::cout << rsma::baseline_to_json(rsma::rsma_unpaired_oracle_solve(sc, solve_eps));
            } else if (scheme == rsma::Scheme::PairedNoma) {
                std::cout << rsma::baseline_to_json(rsma::noma_paired_solve(sc, solve_eps));
            } else {
                std::cout << rsma::baseline_to_json(rsma::noma_unpaired_solve(sc, solve_eps));
            }
        } else if (*sweep) {
            sweep_spec.kind = rsma::sweep_kind_from_string(sweep_kind);
            sweep_spec.values = sweep_values;
            sweep_spec.schemes = parse_schemes(sweep_schemes);
            const auto rows = rsma::run_sweep(sweep_spec);
            write_text(sweep_out, rsma::csv_string(rows));
            if (!sweep_svg.empty()) rsma::emit_svg_plot(rows, sweep_spec.kind, sweep_svg);
        } else if (*trace) {
            const rsma::Scenario sc = trace_scenario.empty()
                                          ? rsma::generate_drop(trace_cfg)
                                          : rsma::load_scenario(trace_scenario);
            const auto steps = rsma::run_convergence_trace(sc, {trace_eps, std::nullopt});
            write_text(trace_out, rsma::trace_csv_string(steps));
            if (!trace_svg.empty()) rsma::emit_svg_plot(steps, trace_svg);
        } else if (*bench) {
            const auto rows = rsma::run_bench(bench_n, bench_trials,
                                              parse_schemes(bench_schemes), bench_cfg, bench_eps);
            std::cout << rsma::bench_table_string(rows);
            if (!bench_out.empty()) rsma::emit_bench_csv(rows, bench_out);
        } else if (*plot) {
            std::ifstream in(plot_in, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open for reading: " + plot_in);
            std::ostringstream ss;
            ss << in.rdbuf();
            if (plot_kind == "convergence") {
                rsma::emit_svg_plot(rsma::parse_trace_csv(ss.str()), plot_out);
            } else {
                rsma::emit_svg_plot(rsma::parse_csv(ss.str()),
                                    rsma::sweep_kind_from_string(plot_kind), plot_out);
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
