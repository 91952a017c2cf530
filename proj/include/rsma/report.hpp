#pragma once
#include <string>
#include <vector>

#include "rsma/experiment.hpp"

namespace rsma {

// CSV with header scheme,sweep_kind,sweep_value,trial,seed,tau_s,sum_alpha,
// iterations,wall_time_s; RFC-4180 quoting, LF endings, floats as shortest
// round-trip decimals.
std::string csv_string(const std::vector<ResultRow>& rows);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> parse_csv(const std::string& text);
std::vector<ResultRow> read_csv(const std::string& path);

// Convergence traces use their own flat format:
// iteration,tau_lb_s,tau_ub_s,feasible
std::string trace_csv_string(const std::vector<BisectionStep>& trace);
void emit_trace_csv(const std::vector<BisectionStep>& trace, const std::string& path);
std::vector<BisectionStep> parse_trace_csv(const std::string& text);

std::string bench_csv_string(const std::vector<BenchRow>& rows);
void emit_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);
std::string bench_table_string(const std::vector<BenchRow>& rows);

// Standalone SVG 1.1 line chart: one series per scheme, mean over trials
// with min/max whiskers, latency in milliseconds on the y axis.
std::string svg_plot_string(const std::vector<ResultRow>& rows, SweepKind kind);
void emit_svg_plot(const std::vector<ResultRow>& rows, SweepKind kind,
                   const std::string& path);

// Convergence chart: upper and lower latency bounds per iteration.
std::string svg_trace_string(const std::vector<BisectionStep>& trace);
void emit_svg_plot(const std::vector<BisectionStep>& trace, const std::string& path);

}  // namespace rsma
