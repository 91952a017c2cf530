#include "rsma/pairalloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "minmax_bisect.hpp"
#include "rsma/units.hpp"
#include "rsma/wmath.hpp"

namespace rsma {

namespace detail {

double single_user_latency_sum(const Scenario& sc) {
    const double noise = sc.noise_psd_w_per_hz * sc.bandwidth_hz;
    double total = 0.0;
    for (const UserRadio& u : sc.users) {
        const double rate = capacity_bps(sc.bandwidth_hz, u.channel_gain * u.p_max_w, noise);
        total += latency_of(rate, static_cast<double>(u.packet_bits));
    }
    return total;
}

}  // namespace detail

const char* to_string(RegionCase c) {
    switch (c) {
        case RegionCase::AB: return "AB";
        case RegionCase::BC: return "BC";
        case RegionCase::CD: return "CD";
        case RegionCase::Singleton: return "singleton";
    }
    return "?";
}

std::vector<PairConfig> pair_strong_weak(const Scenario& sc) {
    validate(sc);
    std::vector<int> idx(sc.users.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (sc.users[a].channel_gain != sc.users[b].channel_gain)
            return sc.users[a].channel_gain > sc.users[b].channel_gain;
        return sc.users[a].id < sc.users[b].id;
    });

    const int n = static_cast<int>(idx.size());
    std::vector<PairConfig> pairs;
    pairs.reserve((n + 1) / 2);
    for (int k = 0; k < n / 2; ++k) {
        PairConfig p;
        p.user1 = sc.users[idx[k]];           // stronger user carries the split
        p.user2 = sc.users[idx[n - 1 - k]];
        p.pair_index = k;
        pairs.push_back(std::move(p));
    }
    if (n % 2 == 1) {
        PairConfig p;
        p.user1 = sc.users[idx[n / 2]];  // median user rides alone
        p.pair_index = n / 2;
        pairs.push_back(std::move(p));
    }
    return pairs;
}

namespace {

struct CaseTarget {
    double rx_power_w;   // aggregate h * Pmax on the segment
    double bits;         // packet bits whose rate the segment pins
};

CaseTarget case_target(const PairConfig& pair, RegionCase c) {
    const double g1 = pair.user1.channel_gain * pair.user1.p_max_w;
    const double pl1 = static_cast<double>(pair.user1.packet_bits);
    if (c == RegionCase::CD || c == RegionCase::Singleton) return {g1, pl1};
    if (!pair.user2) throw std::invalid_argument("case_target: two-user case on a singleton pair");
    const double g2 = pair.user2->channel_gain * pair.user2->p_max_w;
    const double pl2 = static_cast<double>(pair.user2->packet_bits);
    switch (c) {
        case RegionCase::AB: return {g2, pl2};
        case RegionCase::BC: return {g1 + g2, pl1 + pl2};
        default: break;
    }
    throw std::logic_error("case_target: unreachable");
}

}  // namespace

std::optional<double> case_alpha(const PairConfig& pair, RegionCase c,
                                 double tau_s, const RadioEnv& env) {
    if (!(tau_s > 0.0)) throw std::domain_error("case_alpha: tau must be positive");
    const CaseTarget t = case_target(pair, c);
    return solve_bandwidth_for_rate({t.rx_power_w, t.bits / tau_s,
                                     env.bandwidth_hz, env.noise_psd_w_per_hz});
}

std::optional<CasePowers> case_powers(const PairConfig& pair, RegionCase c,
                                      double tau_s, double alpha,
                                      const RadioEnv& env) {
    if (!(tau_s > 0.0)) throw std::domain_error("case_powers: tau must be positive");
    if (!(alpha > 0.0)) throw std::domain_error("case_powers: alpha must be positive");

    const double band = env.bandwidth_hz * alpha;
    const double noise = env.noise_psd_w_per_hz * band;
    const double h1 = pair.user1.channel_gain;
    const double p1max = pair.user1.p_max_w;
    const double pl1 = static_cast<double>(pair.user1.packet_bits);

    if (c == RegionCase::Singleton) return CasePowers{0.0, p1max, 0.0};

    if (!pair.user2) throw std::invalid_argument("case_powers: two-user case on a singleton pair");
    const double h2 = pair.user2->channel_gain;
    const double p2max = pair.user2->p_max_w;
    const double pl2 = static_cast<double>(pair.user2->packet_bits);

    switch (c) {
        case RegionCase::AB: {
            // User 2 at full power pins the horizontal face; user 1 buys its
            // target on the early stream against that interference.
            const double grow1 = std::expm1(kLn2 * (pl1 / tau_s) / band);
            const double p11 = grow1 * (h2 * p2max + noise) / h1;
            return CasePowers{p11, 0.0, p2max};
        }
        case RegionCase::BC: {
            // Late-stream power that leaves user 2 exactly on target...
            const double grow2 = std::expm1(kLn2 * (pl2 / tau_s) / band);
            double p12 = h2 * p2max / (h1 * grow2) - noise / h1;
            const double tol1 = 1e-9 * p1max;
            if (p12 < -tol1) return std::nullopt;  // intersection on the AB side
            p12 = std::max(p12, 0.0);
            // ...then the early stream tops user 1 up to its own target.
            const double r12 = capacity_bps(band, h1 * p12, noise);
            double r11 = pl1 / tau_s - r12;
            if (r11 < -1e-9 * (pl1 + pl2) / tau_s) return std::nullopt;  // CD side
            r11 = std::max(r11, 0.0);
            const double grow11 = std::expm1(kLn2 * r11 / band);
            const double p11 = grow11 * (h2 * p2max + h1 * p12 + noise) / h1;
            return CasePowers{p11, p12, p2max};
        }
        case RegionCase::CD: {
            const double grow2 = std::expm1(kLn2 * (pl2 / tau_s) / band);
            const double p2 = grow2 * (h1 * p1max + noise) / h2;
            return CasePowers{0.0, p1max, p2};
        }
        default:
            break;
    }
    throw std::logic_error("case_powers: unreachable");
}

namespace {

bool within_caps(const CasePowers& pw, const PairConfig& pair) {
    const double tol1 = 1e-9 * pair.user1.p_max_w;
    if (pw.p11 < 0.0 || pw.p12 < 0.0 || pw.p2 < 0.0) return false;
    if (pw.p11 + pw.p12 > pair.user1.p_max_w + tol1) return false;
    if (pair.user2) {
        const double tol2 = 1e-9 * pair.user2->p_max_w;
        if (pw.p2 > pair.user2->p_max_w + tol2) return false;
    } else if (pw.p2 != 0.0) {
        return false;
    }
    return true;
}

}  // namespace

std::optional<CaseAllocation> classify_and_allocate(const PairConfig& pair,
                                                    double tau_s,
                                                    const RadioEnv& env) {
    constexpr RegionCase kOrder[] = {RegionCase::AB, RegionCase::BC, RegionCase::CD};

    if (!pair.user2) {
        const auto alpha = case_alpha(pair, RegionCase::Singleton, tau_s, env);
        if (!alpha) return std::nullopt;
        const auto pw = case_powers(pair, RegionCase::Singleton, tau_s, *alpha, env);
        const PairRates r = pair_stream_rates(pair, *alpha, pw->p11, pw->p12, pw->p2, env);
        return CaseAllocation{RegionCase::Singleton, *alpha, pw->p11, pw->p12, pw->p2,
                              r.r1(), r.r2};
    }

    for (RegionCase c : kOrder) {
        const auto alpha = case_alpha(pair, c, tau_s, env);
        // Any segment's aggregate being unreachable at infinite bandwidth
        // caps the same user rate on every segment, so the pair is done for
        // at this tau no matter the case.
        if (!alpha) return std::nullopt;
        const auto pw = case_powers(pair, c, tau_s, *alpha, env);
        if (!pw || !within_caps(*pw, pair)) continue;
        const PairRates r = pair_stream_rates(pair, *alpha, pw->p11, pw->p12, pw->p2, env);
        return CaseAllocation{c, *alpha, pw->p11, pw->p12, pw->p2, r.r1(), r.r2};
    }
    return std::nullopt;
}

FeasibilityCheck feasible_at_tau(const std::vector<PairConfig>& pairs,
                                 double tau_s, const RadioEnv& env) {
    FeasibilityCheck out;
    out.allocations.reserve(pairs.size());
    for (const PairConfig& p : pairs) {
        auto alloc = classify_and_allocate(p, tau_s, env);
        if (!alloc) {
            out.pair_infeasible = true;
            out.first_infeasible_pair = p.pair_index;
            out.feasible = false;
            return out;
        }
        out.sum_alpha += alloc->alpha;
        out.allocations.push_back(std::move(*alloc));
    }
    out.feasible = out.sum_alpha <= 1.0;
    return out;
}

AllocationSolution solve_min_latency(const Scenario& sc, const SolveOptions& opts) {
    validate(sc);
    AllocationSolution sol;
    sol.pairs = pair_strong_weak(sc);
    const RadioEnv env = sc.env();

    FeasibilityCheck best;
    auto probe = [&](double tau) {
        FeasibilityCheck fc = feasible_at_tau(sol.pairs, tau, env);
        const bool ok = fc.feasible;
        if (ok) best = std::move(fc);  // feasible probes shrink tau, last one wins
        return ok;
    };

    const double guess = detail::single_user_latency_sum(sc);
    const detail::BisectResult r =
        detail::bisect_min_tau(guess, opts.eps_s, opts.bounds, probe, &sol.trace);

    sol.tau_s = r.tau_ub;
    sol.iterations = r.iterations;
    sol.doublings = r.doublings;
    sol.pair_allocations = std::move(best.allocations);
    sol.sum_alpha = best.sum_alpha;

    sol.user_rate_bps.assign(sc.users.size(), 0.0);
    sol.user_latency_s.assign(sc.users.size(), 0.0);
    for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
        const PairConfig& p = sol.pairs[i];
        const CaseAllocation& a = sol.pair_allocations[i];
        sol.user_rate_bps[p.user1.id] = a.r1;
        sol.user_latency_s[p.user1.id] =
            latency_of(a.r1, static_cast<double>(p.user1.packet_bits));
        if (p.user2) {
            sol.user_rate_bps[p.user2->id] = a.r2;
            sol.user_latency_s[p.user2->id] =
                latency_of(a.r2, static_cast<double>(p.user2->packet_bits));
        }
    }
    return sol;
}

}  // namespace rsma
