#pragma once
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsma/errors.hpp"
#include "rsma/pairalloc.hpp"

namespace rsma::detail {

struct BisectResult {
    double tau_lb = 0.0;
    double tau_ub = 0.0;
    int iterations = 0;  // midpoint probes
    int doublings = 0;   // upper-bound doublings before bisection
};

// Shrink a feasible latency bracket to width eps. Without explicit bounds the
// bracket starts at [0, guess] and the upper end doubles until feasible; with
// explicit bounds the upper end must already be feasible and the lower end is
// taken as infeasible unprobed. `feasible` is called on every probe, so a
// caller can capture the allocation belonging to the final upper bound.
template <typename Feasible>
BisectResult bisect_min_tau(double guess, double eps,
                            std::optional<std::pair<double, double>> bounds,
                            Feasible&& feasible,
                            std::vector<BisectionStep>* trace = nullptr,
                            int max_doublings = 60) {
    if (!(eps > 0.0)) throw std::invalid_argument("bisect: eps must be positive");

    BisectResult r;
    if (bounds) {
        r.tau_lb = bounds->first;
        r.tau_ub = bounds->second;
        if (!(r.tau_ub > r.tau_lb) || r.tau_lb < 0.0)
            throw std::invalid_argument("bisect: bad explicit bounds");
        if (!feasible(r.tau_ub))
            throw std::invalid_argument("bisect: explicit upper bound is not feasible");
    } else {
        if (!(guess > 0.0) || !std::isfinite(guess))
            throw UnboundedError("bisect: no finite initial latency guess");
        r.tau_lb = 0.0;
        r.tau_ub = guess;
        while (!feasible(r.tau_ub)) {
            if (++r.doublings > max_doublings)
                throw UnboundedError("bisect: no feasible latency found while doubling");
            r.tau_lb = r.tau_ub;
            r.tau_ub *= 2.0;
        }
    }

    while (r.tau_ub - r.tau_lb > eps) {
        const double mid = 0.5 * (r.tau_lb + r.tau_ub);
        if (!(mid > r.tau_lb) || !(mid < r.tau_ub)) break;  // fp resolution exhausted
        const bool ok = feasible(mid);
        if (ok) r.tau_ub = mid; else r.tau_lb = mid;
        ++r.iterations;
        if (trace) trace->push_back({r.tau_lb, r.tau_ub, ok});
    }
    return r;
}

// Sum of full-band single-user latencies: a provably feasible starting point
// for every scheme that can fall back to orthogonal sharing, and a sane
// doubling seed for the rest.
double single_user_latency_sum(const Scenario& sc);

}  // namespace rsma::detail
