#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsma/baselines.hpp"
#include "rsma/pairalloc.hpp"
#include "rsma/scene.hpp"

namespace rsma {

enum class SweepKind { Power, Users, Convergence, Bench };
enum class Scheme {
    PairedRsma,
    UnpairedRsmaOracle,
    RsmaSuboptimal,
    RsmaEnumeration,
    PairedNoma,
    UnpairedNoma,
};

const char* to_string(SweepKind k);
const char* to_string(Scheme s);
SweepKind sweep_kind_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);

// Hard user-count cap of a scheme, if any (oracle 20, enumeration 3).
std::optional<int> scheme_user_cap(Scheme s);

struct SweepSpec {
    SweepKind kind = SweepKind::Power;
    std::vector<double> values;  // dBm grid (Power) or user counts (Users)
    int trials = 20;
    std::vector<Scheme> schemes;
    DropConfig base;
    double eps_s = 1e-9;
    int enum_split_grid = 64;
    // Timing is off by default so sweep output is a pure function of the
    // spec and seed; run_bench owns wall-clock measurements.
    bool measure_time = false;
};

struct ResultRow {
    Scheme scheme = Scheme::PairedRsma;
    SweepKind kind = SweepKind::Power;
    double sweep_value = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    double tau_s = 0.0;
    double sum_alpha = 1.0;
    int iterations = 0;
    double wall_time_s = 0.0;
};

// Deterministic per-trial seed derivation.
std::uint64_t trial_seed(std::uint64_t base_seed, int point_index, int trial);

// The drop a given (point, trial) cell of the sweep uses; lets a row be
// re-validated from its CSV record alone.
DropConfig drop_for_point(const SweepSpec& spec, int point_index, int trial);

struct SchemeResult {
    double tau_s = 0.0;
    double sum_alpha = 1.0;
    int iterations = 0;
};
SchemeResult run_scheme(Scheme s, const Scenario& sc, double eps_s,
                        int enum_split_grid = 64);

// One row per (grid point, trial, scheme), sorted by (scheme, value, trial).
// Throws std::invalid_argument when a scheme's size cap is exceeded anywhere
// on the grid.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Bisection bracket per iteration of the paired solver on one scenario.
std::vector<BisectionStep> run_convergence_trace(const Scenario& sc,
                                                 const SolveOptions& opts = {});

struct BenchRow {
    Scheme scheme = Scheme::PairedRsma;
    int n_users = 0;
    int trials = 0;
    double median_s = 0.0;
    bool skipped = false;
    std::string note;
};

// Median wall time of each scheme at each user count; schemes past their cap
// are kept in the table as skipped rows. Runs single-threaded.
std::vector<BenchRow> run_bench(const std::vector<int>& n_list, int trials,
                                const std::vector<Scheme>& schemes,
                                const DropConfig& base, double eps_s);

}  // namespace rsma
