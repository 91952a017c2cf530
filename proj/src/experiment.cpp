#include "rsma/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rsma/errors.hpp"

namespace rsma {

const char* to_string(SweepKind k) {
    switch (k) {
        case SweepKind::Power: return "power";
        case SweepKind::Users: return "users";
        case SweepKind::Convergence: return "convergence";
        case SweepKind::Bench: return "bench";
    }
    return "?";
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::PairedRsma: return "paired-rsma";
        case Scheme::UnpairedRsmaOracle: return "unpaired-rsma-oracle";
        case Scheme::RsmaSuboptimal: return "rsma-suboptimal";
        case Scheme::RsmaEnumeration: return "rsma-enum";
        case Scheme::PairedNoma: return "paired-noma";
        case Scheme::UnpairedNoma: return "unpaired-noma";
    }
    return "?";
}

SweepKind sweep_kind_from_string(const std::string& s) {
    if (s == "power") return SweepKind::Power;
    if (s == "users") return SweepKind::Users;
    if (s == "convergence") return SweepKind::Convergence;
    if (s == "bench") return SweepKind::Bench;
    throw std::invalid_argument("unknown sweep kind: " + s);
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "paired-rsma") return Scheme::PairedRsma;
    if (s == "unpaired-rsma-oracle") return Scheme::UnpairedRsmaOracle;
    if (s == "rsma-suboptimal") return Scheme::RsmaSuboptimal;
    if (s == "rsma-enum") return Scheme::RsmaEnumeration;
    if (s == "paired-noma") return Scheme::PairedNoma;
    if (s == "unpaired-noma") return Scheme::UnpairedNoma;
    throw std::invalid_argument("unknown scheme: " + s);
}

std::optional<int> scheme_user_cap(Scheme s) {
    switch (s) {
        case Scheme::UnpairedRsmaOracle: return 20;
        case Scheme::RsmaEnumeration: return 3;
        default: return std::nullopt;
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, int point_index, int trial) {
    return splitmix64(splitmix64(base_seed ^ (0x517cc1b727220a95ull *
                                              static_cast<std::uint64_t>(point_index + 1))) ^
                      (0x2545f4914f6cdd1dull * static_cast<std::uint64_t>(trial + 1)));
}

DropConfig drop_for_point(const SweepSpec& spec, int point_index, int trial) {
    DropConfig cfg = spec.base;
    const double v = spec.values.at(point_index);
    if (spec.kind == SweepKind::Power) {
        cfg.p_max_dbm = v;
    } else if (spec.kind == SweepKind::Users || spec.kind == SweepKind::Bench) {
        const int n = static_cast<int>(std::llround(v));
        if (n < 1 || std::abs(v - n) > 1e-9)
            throw std::invalid_argument("user-count grid values must be positive integers");
        cfg.n_users = n;
    }
    cfg.seed = trial_seed(spec.base.seed, point_index, trial);
    return cfg;
}

SchemeResult run_scheme(Scheme s, const Scenario& sc, double eps_s, int enum_split_grid) {
    switch (s) {
        case Scheme::PairedRsma: {
            const AllocationSolution sol = solve_min_latency(sc, {eps_s, std::nullopt});
            return {sol.tau_s, sol.sum_alpha, sol.iterations};
        }
        case Scheme::UnpairedRsmaOracle: {
            const BaselineSolution sol = rsma_unpaired_oracle_solve(sc, eps_s);
            return {sol.tau_s, sol.sum_alpha, sol.iterations};
        }
        case Scheme::RsmaSuboptimal: {
            const BaselineSolution sol = rsma_suboptimal_solve(sc, {}, eps_s);
            return {sol.tau_s, sol.sum_alpha, sol.iterations};
        }
        case Scheme::RsmaEnumeration: {
            const BaselineSolution sol =
                rsma_order_enumeration_solve(sc, enum_split_grid, eps_s);
            return {sol.tau_s, sol.sum_alpha, sol.iterations};
        }
        case Scheme::PairedNoma: {
            const BaselineSolution sol = noma_paired_solve(sc, eps_s);
            return {sol.tau_s, sol.sum_alpha, sol.iterations};
        }
        case Scheme::UnpairedNoma: {
            const BaselineSolution sol = noma_unpaired_solve(sc, eps_s);
            return {sol.tau_s, sol.sum_alpha, sol.iterations};
        }
    }
    throw std::logic_error("run_scheme: unreachable");
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("sweep: empty value grid");
    if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    if (spec.schemes.empty()) throw std::invalid_argument("sweep: no schemes selected");
    if (spec.kind != SweepKind::Power && spec.kind != SweepKind::Users)
        throw std::invalid_argument("sweep: kind must be power or users");

    // Validate scheme caps over the whole grid before running anything.
    for (Scheme s : spec.schemes) {
        const auto cap = scheme_user_cap(s);
        if (!cap) continue;
        for (std::size_t p = 0; p < spec.values.size(); ++p) {
            const int n = spec.kind == SweepKind::Users
                              ? static_cast<int>(std::llround(spec.values[p]))
                              : spec.base.n_users;
            if (n > *cap)
                throw std::invalid_argument(std::string("sweep: scheme ") + to_string(s) +
                                            " supports at most N=" + std::to_string(*cap) +
                                            ", grid asks for N=" + std::to_string(n));
        }
    }

    std::vector<ResultRow> rows;
    rows.reserve(spec.values.size() * spec.trials * spec.schemes.size());
    for (Scheme s : spec.schemes) {
        for (std::size_t p = 0; p < spec.values.size(); ++p) {
            for (int t = 0; t < spec.trials; ++t) {
                const DropConfig cfg = drop_for_point(spec, static_cast<int>(p), t);
                const Scenario sc = generate_drop(cfg);
                ResultRow row;
                row.scheme = s;
                row.kind = spec.kind;
                row.sweep_value = spec.values[p];
                row.trial = t;
                row.seed = cfg.seed;
                if (spec.measure_time) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const SchemeResult res = run_scheme(s, sc, spec.eps_s, spec.enum_split_grid);
                    const auto t1 = std::chrono::steady_clock::now();
                    row.tau_s = res.tau_s;
                    row.sum_alpha = res.sum_alpha;
                    row.iterations = res.iterations;
                    row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
                } else {
                    const SchemeResult res = run_scheme(s, sc, spec.eps_s, spec.enum_split_grid);
                    row.tau_s = res.tau_s;
                    row.sum_alpha = res.sum_alpha;
                    row.iterations = res.iterations;
                    row.wall_time_s = 0.0;  // sweep output stays seed-deterministic
                }
                rows.push_back(row);
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.scheme != b.scheme) return static_cast<int>(a.scheme) < static_cast<int>(b.scheme);
        if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
        return a.trial < b.trial;
    });
    return rows;
}

std::vector<BisectionStep> run_convergence_trace(const Scenario& sc,
                                                 const SolveOptions& opts) {
    return solve_min_latency(sc, opts).trace;
}

std::vector<BenchRow> run_bench(const std::vector<int>& n_list, int trials,
                                const std::vector<Scheme>& schemes,
                                const DropConfig& base, double eps_s) {
    if (n_list.empty()) throw std::invalid_argument("bench: empty user-count list");
    if (trials < 1) throw std::invalid_argument("bench: trials must be >= 1");

    std::vector<BenchRow> rows;
    for (int n : n_list) {
        for (Scheme s : schemes) {
            BenchRow row;
            row.scheme = s;
            row.n_users = n;
            row.trials = trials;
            const auto cap = scheme_user_cap(s);
            if (cap && n > *cap) {
                row.skipped = true;
                row.note = std::string("skipped: supports at most N=") + std::to_string(*cap);
                rows.push_back(row);
                continue;
            }
            std::vector<double> times;
            times.reserve(trials);
            for (int t = 0; t < trials; ++t) {
                DropConfig cfg = base;
                cfg.n_users = n;
                cfg.seed = trial_seed(base.seed, n, t);
                const Scenario sc = generate_drop(cfg);
                const auto t0 = std::chrono::steady_clock::now();
                (void)run_scheme(s, sc, eps_s);
                const auto t1 = std::chrono::steady_clock::now();
                times.push_back(std::chrono::duration<double>(t1 - t0).count());
            }
            std::sort(times.begin(), times.end());
            row.median_s = times[times.size() / 2];
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace rsma
