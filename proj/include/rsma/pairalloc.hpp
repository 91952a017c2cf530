#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "rsma/rates.hpp"

namespace rsma {

// Segment of the pair rate region the equal-latency ray intersects.
enum class RegionCase { AB, BC, CD, Singleton };
const char* to_string(RegionCase c);

struct CaseAllocation {
    RegionCase region_case = RegionCase::AB;
    double alpha = 0.0;
    double p11 = 0.0, p12 = 0.0, p2 = 0.0;  // watts
    double r1 = 0.0, r2 = 0.0;              // achieved rates, bits/s
};

// Sort by descending gain (ties by ascending id) and pair rank k with rank
// N-1-k; the stronger user of each pair is the split one. Odd N leaves the
// median user as a singleton pair, appended last.
std::vector<PairConfig> pair_strong_weak(const Scenario& sc);

// Band fraction that puts the case's aggregate rate exactly on target at
// latency bound tau. nullopt: unreachable at any bandwidth, which makes the
// whole pair infeasible at this tau. Result may exceed 1.
std::optional<double> case_alpha(const PairConfig& pair, RegionCase c,
                                 double tau_s, const RadioEnv& env);

struct CasePowers {
    double p11 = 0.0, p12 = 0.0, p2 = 0.0;
};

// Stream powers meeting both users' targets on the given segment. nullopt
// means a negative intermediate, i.e. the intersection is not on this
// segment. Cap checks are the caller's job.
std::optional<CasePowers> case_powers(const PairConfig& pair, RegionCase c,
                                      double tau_s, double alpha,
                                      const RadioEnv& env);

// Probe AB, BC, CD in that order and return the first allocation whose
// powers respect the per-user caps (tolerance 1e-9 * cap). nullopt: pair
// infeasible at this tau regardless of alpha.
std::optional<CaseAllocation> classify_and_allocate(const PairConfig& pair,
                                                    double tau_s,
                                                    const RadioEnv& env);

struct FeasibilityCheck {
    bool feasible = false;
    bool pair_infeasible = false;   // some pair failed every case
    int first_infeasible_pair = -1; // pair_index of the first failure
    double sum_alpha = 0.0;
    std::vector<CaseAllocation> allocations;  // one per pair when all solved
};

// Allocate every pair at tau; feasible iff no pair failed and the band
// fractions fit the unit budget.
FeasibilityCheck feasible_at_tau(const std::vector<PairConfig>& pairs,
                                 double tau_s, const RadioEnv& env);

// Bracket state after each bisection probe.
struct BisectionStep {
    double tau_lb = 0.0;
    double tau_ub = 0.0;
    bool feasible = false;  // outcome of the probe at the midpoint
};

struct SolveOptions {
    double eps_s = 1e-9;  // absolute bracket width stop
    // Explicit (tau_lb, tau_ub). tau_ub must be feasible; tau_lb is taken as
    // infeasible without probing. Default: lb = 0, ub found by doubling the
    // sum of single-user full-band latencies until feasible.
    std::optional<std::pair<double, double>> bounds;
};

struct AllocationSolution {
    double tau_s = 0.0;
    std::vector<PairConfig> pairs;
    std::vector<CaseAllocation> pair_allocations;  // aligned with pairs
    double sum_alpha = 0.0;
    int iterations = 0;  // bisection probes after the bracket was fixed
    int doublings = 0;   // upper-bound doublings before bisection
    std::vector<double> user_rate_bps;    // by user id
    std::vector<double> user_latency_s;   // by user id
    std::vector<BisectionStep> trace;
};

// Bisection on the latency bound; returns the allocation computed at the
// final feasible upper bound, so the result is always a feasible certificate.
AllocationSolution solve_min_latency(const Scenario& sc,
                                     const SolveOptions& opts = {});

}  // namespace rsma
