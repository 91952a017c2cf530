#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rsma/pairalloc.hpp"
#include "rsma/rates.hpp"

namespace rsma {

// Per-user rate floors, bits/s, in the same order as the user list handed in.
using RateTargetVector = std::vector<double>;

struct BacksubResult {
    bool feasible = false;
    std::vector<double> power_w;  // minimal powers for the order, even if infeasible
};

// Exact feasibility for one stream per user under a fixed decoding order:
// walking from last decoded to first, each power is the unique value hitting
// its SINR target given the (already minimal) later powers, so the result is
// componentwise minimal and monotone in later powers.
BacksubResult noma_backsub_feasible(const std::vector<UserRadio>& users_in_decoding_order,
                                    const RateTargetVector& targets_bps,
                                    const RadioEnv& env);

struct BaselineSolution {
    std::string scheme;
    double tau_s = 0.0;
    int iterations = 0;
    int doublings = 0;
    double sum_alpha = 1.0;              // paired schemes report their band usage
    std::vector<double> user_power_w;    // by user id where the scheme exposes powers
    std::vector<double> pair_alpha;      // paired NOMA only
    std::vector<StreamId> decoding_order;
    std::uint64_t orders_enumerated = 0; // enumeration solver only
};

// Full band shared by all users, one stream each, decoded by descending
// channel gain; bisection on the latency bound.
BaselineSolution noma_unpaired_solve(const Scenario& sc, double eps_s);

// Strong-weak pairs on orthogonal band fractions; per pair and candidate
// latency, the minimal fraction is found by scalar bisection on alpha over
// both within-pair decode orders (smaller feasible fraction wins).
BaselineSolution noma_paired_solve(const Scenario& sc, double eps_s);

struct PolymatroidCheck {
    bool feasible = false;
    std::uint64_t subsets_checked = 0;
};

// Multiple-access capacity-region test at full power caps: feasible iff every
// nonempty user subset S satisfies sum_S R <= B log2(1 + sum_S h*Pmax /
// (sigma^2 B)). Full power is optimal since each bound is nondecreasing in
// every user's power. Checks all 2^N - 1 subsets; N > 20 throws
// UnsupportedSizeError.
PolymatroidCheck rsma_polymatroid_check(const Scenario& sc,
                                        const RateTargetVector& targets_bps);
bool rsma_polymatroid_feasible(const Scenario& sc,
                               const RateTargetVector& targets_bps);

// Optimal unpaired RSMA latency via bisection on the polymatroid test.
// Performance oracle only: no power or order certificate.
BaselineSolution rsma_unpaired_oracle_solve(const Scenario& sc, double eps_s);

// Brute force over every distinct decoding order of the 2N split streams
// (each user's part 1 canonically before part 2, (2N)!/2^N orders) and a
// per-user grid of rate splits; feasibility per combination by
// back-substitution. N <= 3.
BaselineSolution rsma_order_enumeration_solve(const Scenario& sc,
                                              int split_grid_points,
                                              double eps_s);

struct SuboptimalConfig {
    double split_ratio = 0.5;  // rate fraction on each user's first stream
};

// Reconstructed fixed-rule RSMA: every user split at a fixed rate ratio,
// decode order all first parts by descending gain then all second parts by
// ascending gain, feasibility by 2N-stream back-substitution.
BaselineSolution rsma_suboptimal_solve(const Scenario& sc,
                                       const SuboptimalConfig& cfg,
                                       double eps_s);

// Exhaustive upper bound on the paired solver's optimum: simplex grid over
// per-pair band fractions (summing to 1) crossed with a grid along each
// pair's full-power region boundary, parametrized by the user-1 rate
// fraction. Converges from above as both grids refine. M <= 3 pairs.
double paired_grid_oracle(const Scenario& sc, int alpha_grid, int split_grid);

}  // namespace rsma
