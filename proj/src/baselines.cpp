#include "rsma/baselines.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "minmax_bisect.hpp"
#include "rsma/errors.hpp"
#include "rsma/units.hpp"

namespace rsma {

namespace {

constexpr double kCapTol = 1e-9;  // relative slack on power-cap comparisons

std::vector<int> ids_by_descending_gain(const Scenario& sc) {
    std::vector<int> idx(sc.users.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (sc.users[a].channel_gain != sc.users[b].channel_gain)
            return sc.users[a].channel_gain > sc.users[b].channel_gain;
        return sc.users[a].id < sc.users[b].id;
    });
    return idx;
}

}  // namespace

BacksubResult noma_backsub_feasible(const std::vector<UserRadio>& users_in_decoding_order,
                                    const RateTargetVector& targets_bps,
                                    const RadioEnv& env) {
    if (users_in_decoding_order.size() != targets_bps.size())
        throw std::invalid_argument("noma_backsub: one target per user required");
    const double noise = env.noise_psd_w_per_hz * env.bandwidth_hz;

    BacksubResult out;
    out.feasible = true;
    out.power_w.assign(users_in_decoding_order.size(), 0.0);
    double interference = 0.0;
    for (std::size_t k = users_in_decoding_order.size(); k-- > 0;) {
        const UserRadio& u = users_in_decoding_order[k];
        const double snr_target = std::expm1(kLn2 * targets_bps[k] / env.bandwidth_hz);
        const double p = snr_target == 0.0
                             ? 0.0
                             : snr_target * (interference + noise) / u.channel_gain;
        out.power_w[k] = p;
        if (!(p <= u.p_max_w * (1.0 + kCapTol))) out.feasible = false;
        interference += u.channel_gain * p;
    }
    return out;
}

namespace {

// ---- generic stream back-substitution (rate splitting baselines) ----------

struct StreamSpec {
    int user = 0;        // index into the per-user cap table
    double gain = 0.0;
    double target_bps = 0.0;
};

// Minimal per-stream powers under a fixed order, feasibility against the
// per-USER total caps (a user's two streams share one amplifier budget).
bool stream_backsub_feasible(const std::vector<StreamSpec>& streams_in_order,
                             const std::vector<double>& user_cap_w,
                             const RadioEnv& env) {
    const double noise = env.noise_psd_w_per_hz * env.bandwidth_hz;
    std::vector<double> per_user(user_cap_w.size(), 0.0);
    double interference = 0.0;
    for (std::size_t k = streams_in_order.size(); k-- > 0;) {
        const StreamSpec& s = streams_in_order[k];
        const double snr_target = std::expm1(kLn2 * s.target_bps / env.bandwidth_hz);
        const double p =
            snr_target == 0.0 ? 0.0 : snr_target * (interference + noise) / s.gain;
        per_user[s.user] += p;
        interference += s.gain * p;
    }
    for (std::size_t n = 0; n < user_cap_w.size(); ++n)
        if (!(per_user[n] <= user_cap_w[n] * (1.0 + kCapTol))) return false;
    return true;
}

// Finite bandwidth can only meet a rate that fits under the wideband ceiling.
bool under_wideband_ceiling(const UserRadio& u, double target_bps, double noise_psd) {
    return kLn2 * target_bps * noise_psd < u.channel_gain * u.p_max_w;
}

}  // namespace

BaselineSolution noma_unpaired_solve(const Scenario& sc, double eps_s) {
    validate(sc);
    const RadioEnv env = sc.env();
    const std::vector<int> order = ids_by_descending_gain(sc);
    std::vector<UserRadio> users;
    users.reserve(order.size());
    for (int i : order) users.push_back(sc.users[i]);

    auto probe = [&](double tau) {
        RateTargetVector targets(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            targets[k] = static_cast<double>(users[k].packet_bits) / tau;
        return noma_backsub_feasible(users, targets, env).feasible;
    };

    const auto r = detail::bisect_min_tau(detail::single_user_latency_sum(sc), eps_s,
                                          std::nullopt, probe);

    BaselineSolution sol;
    sol.scheme = "unpaired-noma";
    sol.tau_s = r.tau_ub;
    sol.iterations = r.iterations;
    sol.doublings = r.doublings;
    sol.sum_alpha = 1.0;
    RateTargetVector targets(users.size());
    for (std::size_t k = 0; k < users.size(); ++k)
        targets[k] = static_cast<double>(users[k].packet_bits) / sol.tau_s;
    const BacksubResult bs = noma_backsub_feasible(users, targets, env);
    sol.user_power_w.assign(sc.users.size(), 0.0);
    for (std::size_t k = 0; k < users.size(); ++k) {
        sol.user_power_w[users[k].id] = bs.power_w[k];
        sol.decoding_order.push_back({users[k].id, 1});
    }
    return sol;
}

namespace {

// Minimal band fraction letting a NOMA pair hit its targets under one decode
// order; nullopt when no finite fraction works.
std::optional<double> noma_pair_min_alpha(const UserRadio& first, const UserRadio& last,
                                          double tau, const RadioEnv& env) {
    const double r_first = static_cast<double>(first.packet_bits) / tau;
    const double r_last = static_cast<double>(last.packet_bits) / tau;
    if (!under_wideband_ceiling(first, r_first, env.noise_psd_w_per_hz) ||
        !under_wideband_ceiling(last, r_last, env.noise_psd_w_per_hz))
        return std::nullopt;

    auto ok = [&](double alpha) {
        const double band = env.bandwidth_hz * alpha;
        const double noise = env.noise_psd_w_per_hz * band;
        const double g_last = std::expm1(kLn2 * r_last / band);
        const double p_last = g_last * noise / last.channel_gain;
        if (!(p_last <= last.p_max_w * (1.0 + kCapTol))) return false;
        const double g_first = std::expm1(kLn2 * r_first / band);
        const double p_first =
            g_first * (last.channel_gain * p_last + noise) / first.channel_gain;
        return p_first <= first.p_max_w * (1.0 + kCapTol);
    };

    double hi = 1.0;
    int doublings = 0;
    while (!ok(hi)) {
        if (++doublings > 200) return std::nullopt;
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (ok(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

std::optional<double> singleton_min_alpha(const UserRadio& u, double tau,
                                          const RadioEnv& env) {
    const double target = static_cast<double>(u.packet_bits) / tau;
    if (!under_wideband_ceiling(u, target, env.noise_psd_w_per_hz)) return std::nullopt;
    auto ok = [&](double alpha) {
        const double band = env.bandwidth_hz * alpha;
        const double noise = env.noise_psd_w_per_hz * band;
        const double p = std::expm1(kLn2 * target / band) * noise / u.channel_gain;
        return p <= u.p_max_w * (1.0 + kCapTol);
    };
    double hi = 1.0;
    int doublings = 0;
    while (!ok(hi)) {
        if (++doublings > 200) return std::nullopt;
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (ok(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

}  // namespace

BaselineSolution noma_paired_solve(const Scenario& sc, double eps_s) {
    validate(sc);
    const RadioEnv env = sc.env();
    const std::vector<PairConfig> pairs = pair_strong_weak(sc);

    std::vector<double> best_alpha;
    auto pair_alphas_at = [&](double tau, std::vector<double>* out) {
        double sum = 0.0;
        for (const PairConfig& p : pairs) {
            std::optional<double> a;
            if (!p.user2) {
                a = singleton_min_alpha(p.user1, tau, env);
            } else {
                // Try both in-pair decode orders, keep the cheaper one.
                const auto a1 = noma_pair_min_alpha(p.user1, *p.user2, tau, env);
                const auto a2 = noma_pair_min_alpha(*p.user2, p.user1, tau, env);
                if (a1 && a2) a = std::min(*a1, *a2);
                else if (a1) a = a1;
                else if (a2) a = a2;
            }
            if (!a) return std::numeric_limits<double>::infinity();
            sum += *a;
            if (out) out->push_back(*a);
        }
        return sum;
    };

    auto probe = [&](double tau) {
        std::vector<double> alphas;
        const double sum = pair_alphas_at(tau, &alphas);
        if (sum <= 1.0) {
            best_alpha = std::move(alphas);
            return true;
        }
        return false;
    };

    const auto r = detail::bisect_min_tau(detail::single_user_latency_sum(sc), eps_s,
                                          std::nullopt, probe);

    BaselineSolution sol;
    sol.scheme = "paired-noma";
    sol.tau_s = r.tau_ub;
    sol.iterations = r.iterations;
    sol.doublings = r.doublings;
    sol.pair_alpha = std::move(best_alpha);
    sol.sum_alpha = std::accumulate(sol.pair_alpha.begin(), sol.pair_alpha.end(), 0.0);
    return sol;
}

// ---- unpaired RSMA oracle ---------------------------------------------------

PolymatroidCheck rsma_polymatroid_check(const Scenario& sc,
                                        const RateTargetVector& targets_bps) {
    validate(sc);
    const int n = static_cast<int>(sc.users.size());
    if (n > 20) throw UnsupportedSizeError("polymatroid test supports at most 20 users");
    if (targets_bps.size() != sc.users.size())
        throw std::invalid_argument("polymatroid test: one target per user required");

    const double noise = sc.noise_psd_w_per_hz * sc.bandwidth_hz;
    const std::size_t m = std::size_t{1} << n;
    std::vector<double> sum_rate(m, 0.0), sum_rx(m, 0.0);
    std::vector<double> rate_by_id(n), rx_by_id(n);
    for (const UserRadio& u : sc.users) {
        rate_by_id[u.id] = targets_bps[u.id];
        rx_by_id[u.id] = u.channel_gain * u.p_max_w;
    }
    PolymatroidCheck out;
    out.feasible = true;
    for (std::size_t s = 1; s < m; ++s) {
        const int low = std::countr_zero(s);
        sum_rate[s] = sum_rate[s & (s - 1)] + rate_by_id[low];
        sum_rx[s] = sum_rx[s & (s - 1)] + rx_by_id[low];
        if (sum_rate[s] > capacity_bps(sc.bandwidth_hz, sum_rx[s], noise))
            out.feasible = false;
        ++out.subsets_checked;
    }
    return out;
}

bool rsma_polymatroid_feasible(const Scenario& sc, const RateTargetVector& targets_bps) {
    return rsma_polymatroid_check(sc, targets_bps).feasible;
}

BaselineSolution rsma_unpaired_oracle_solve(const Scenario& sc, double eps_s) {
    validate(sc);
    const int n = static_cast<int>(sc.users.size());
    if (n > 20) throw UnsupportedSizeError("unpaired RSMA oracle supports at most 20 users");

    // Subset capacities do not depend on tau; precompute once and compare
    // against tau-scaled packet sums inside the bisection.
    const double noise = sc.noise_psd_w_per_hz * sc.bandwidth_hz;
    const std::size_t m = std::size_t{1} << n;
    std::vector<double> cap(m, 0.0), bits(m, 0.0), rx(m, 0.0);
    std::vector<double> bits_by_id(n), rx_by_id(n);
    for (const UserRadio& u : sc.users) {
        bits_by_id[u.id] = static_cast<double>(u.packet_bits);
        rx_by_id[u.id] = u.channel_gain * u.p_max_w;
    }
    for (std::size_t s = 1; s < m; ++s) {
        const int low = std::countr_zero(s);
        bits[s] = bits[s & (s - 1)] + bits_by_id[low];
        rx[s] = rx[s & (s - 1)] + rx_by_id[low];
        cap[s] = capacity_bps(sc.bandwidth_hz, rx[s], noise);
    }

    auto probe = [&](double tau) {
        for (std::size_t s = 1; s < m; ++s)
            if (bits[s] > tau * cap[s]) return false;
        return true;
    };

    const auto r = detail::bisect_min_tau(detail::single_user_latency_sum(sc), eps_s,
                                          std::nullopt, probe);
    BaselineSolution sol;
    sol.scheme = "unpaired-rsma-oracle";
    sol.tau_s = r.tau_ub;
    sol.iterations = r.iterations;
    sol.doublings = r.doublings;
    return sol;
}

// ---- exhaustive order enumeration (N <= 3) ----------------------------------

namespace {

// All decode orders of the 2N split streams with each user's part 1 ahead of
// its part 2; stream code 2n is user n part 1, 2n+1 is part 2.
std::vector<std::vector<int>> canonical_orders(int n_users) {
    std::vector<int> perm(2 * n_users);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> orders;
    do {
        bool canonical = true;
        std::vector<int> pos(2 * n_users);
        for (int i = 0; i < 2 * n_users; ++i) pos[perm[i]] = i;
        for (int u = 0; u < n_users; ++u)
            if (pos[2 * u] > pos[2 * u + 1]) { canonical = false; break; }
        if (canonical) orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return orders;
}

}  // namespace

BaselineSolution rsma_order_enumeration_solve(const Scenario& sc,
                                              int split_grid_points,
                                              double eps_s) {
    validate(sc);
    const int n = static_cast<int>(sc.users.size());
    if (n > 3) throw UnsupportedSizeError("order enumeration supports at most 3 users");
    if (split_grid_points < 1)
        throw std::invalid_argument("order enumeration: need at least one split point");

    const int g = split_grid_points;
    std::vector<double> splits(g);
    if (g == 1) splits[0] = 0.5;
    else for (int i = 0; i < g; ++i) splits[i] = static_cast<double>(i) / (g - 1);

    const std::vector<std::vector<int>> orders = canonical_orders(n);
    const double band = sc.bandwidth_hz;
    const double noise = sc.noise_psd_w_per_hz * band;

    std::vector<double> bits(n), gain(n), cap_w(n), rx_cap(n);
    for (const UserRadio& u : sc.users) {
        bits[u.id] = static_cast<double>(u.packet_bits);
        gain[u.id] = u.channel_gain;
        cap_w[u.id] = u.p_max_w;
    }
    double total_bits = 0.0, total_rx = 0.0;
    for (int u = 0; u < n; ++u) {
        total_bits += bits[u];
        total_rx += gain[u] * cap_w[u];
    }

    // Back-substitution along an order telescopes: with F_k the product of
    // 2^{-r/B} over the first k streams, user n's minimal power is
    // sigma^2 B 2^{Rtot/B} (F_{i-1} - F_i + F_{j-1} - F_j) / h_n for its two
    // positions i < j. Per-tau tables of the per-stream factors make a
    // combination cost a handful of multiplies.
    std::vector<double> first_factor(static_cast<std::size_t>(n) * g);
    std::vector<double> second_factor(static_cast<std::size_t>(n) * g);

    auto probe = [&](double tau) {
        // Necessary sum-rate bound; also keeps the 2^{Rtot/B} scale finite.
        if (noise * std::expm1(kLn2 * (total_bits / tau) / band) >
            total_rx * (1.0 + kCapTol))
            return false;

        const double scale = noise * std::exp2((total_bits / tau) / band);
        std::array<double, 3> budget{};  // h_n * Pmax_n / scale
        std::array<double, 3> full{};    // 2^{-R_n/B}
        for (int u = 0; u < n; ++u) {
            budget[u] = gain[u] * cap_w[u] * (1.0 + kCapTol) / scale;
            full[u] = std::exp2(-(bits[u] / tau) / band);
            for (int i = 0; i < g; ++i) {
                const double f1 = std::exp2(-splits[i] * (bits[u] / tau) / band);
                first_factor[static_cast<std::size_t>(u) * g + i] = f1;
                second_factor[static_cast<std::size_t>(u) * g + i] = full[u] / f1;
            }
        }

        std::array<int, 3> gi{};  // split index per user
        for (const std::vector<int>& order : orders) {
            gi.fill(0);
            while (true) {
                // Prefix walk over the 2n positions of this order.
                double prefix = 1.0;
                std::array<double, 3> used{};
                bool fits = true;
                for (int pos = 0; pos < 2 * n && fits; ++pos) {
                    const int code = order[pos];
                    const int u = code >> 1;
                    const double f =
                        (code & 1) == 0
                            ? first_factor[static_cast<std::size_t>(u) * g + gi[u]]
                            : second_factor[static_cast<std::size_t>(u) * g + gi[u]];
                    const double next = prefix * f;
                    used[u] += prefix - next;  // this stream's power in F units
                    if (used[u] > budget[u]) fits = false;
                    prefix = next;
                }
                if (fits) return true;
                // Odometer over the split grid.
                int d = 0;
                while (d < n && ++gi[d] == g) gi[d++] = 0;
                if (d == n) break;
            }
        }
        return false;
    };

    const auto r = detail::bisect_min_tau(detail::single_user_latency_sum(sc), eps_s,
                                          std::nullopt, probe);
    BaselineSolution sol;
    sol.scheme = "rsma-enum";
    sol.tau_s = r.tau_ub;
    sol.iterations = r.iterations;
    sol.doublings = r.doublings;
    sol.orders_enumerated = orders.size();
    return sol;
}

// ---- reconstructed fixed-rule RSMA -------------------------------------------

BaselineSolution rsma_suboptimal_solve(const Scenario& sc,
                                       const SuboptimalConfig& cfg,
                                       double eps_s) {
    validate(sc);
    if (!(cfg.split_ratio >= 0.0) || !(cfg.split_ratio <= 1.0))
        throw std::invalid_argument("suboptimal RSMA: split ratio must lie in [0, 1]");
    const RadioEnv env = sc.env();
    const std::vector<int> desc = ids_by_descending_gain(sc);

    // First parts by descending gain, then second parts by ascending gain.
    std::vector<StreamId> order;
    order.reserve(2 * sc.users.size());
    for (int idx : desc) order.push_back({sc.users[idx].id, 1});
    for (auto it = desc.rbegin(); it != desc.rend(); ++it)
        order.push_back({sc.users[*it].id, 2});

    std::vector<double> cap_w(sc.users.size());
    std::vector<UserRadio> by_id(sc.users.size());
    for (const UserRadio& u : sc.users) {
        cap_w[u.id] = u.p_max_w;
        by_id[u.id] = u;
    }

    auto probe = [&](double tau) {
        std::vector<StreamSpec> streams;
        streams.reserve(order.size());
        for (const StreamId& s : order) {
            const UserRadio& u = by_id[s.user];
            const double rate = static_cast<double>(u.packet_bits) / tau;
            streams.push_back({u.id, u.channel_gain,
                               s.part == 1 ? cfg.split_ratio * rate
                                           : (1.0 - cfg.split_ratio) * rate});
        }
        return stream_backsub_feasible(streams, cap_w, env);
    };

    const auto r = detail::bisect_min_tau(detail::single_user_latency_sum(sc), eps_s,
                                          std::nullopt, probe);
    BaselineSolution sol;
    sol.scheme = "rsma-suboptimal";
    sol.tau_s = r.tau_ub;
    sol.iterations = r.iterations;
    sol.doublings = r.doublings;
    sol.decoding_order = order;
    return sol;
}

// ---- grid oracle for the paired solver ---------------------------------------

namespace {

// Minimal equal-latency bound a pair can reach inside band fraction alpha,
// scanning the full-power region boundary by user-1 rate fraction.
double pair_grid_tau(const PairConfig& p, double alpha, int split_grid,
                     const RadioEnv& env) {
    const double pl1 = static_cast<double>(p.user1.packet_bits);
    if (!p.user2) {
        const RegionVertices v = region_vertices(p, alpha, env);
        return latency_of(v.d.r1, pl1);
    }
    const double pl2 = static_cast<double>(p.user2->packet_bits);
    const RegionVertices v = region_vertices(p, alpha, env);
    const double sum_rate = v.b.r1 + v.b.r2;

    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k < split_grid; ++k) {
        const double r1 = v.d.r1 * static_cast<double>(k) / (split_grid - 1);
        double r2;
        if (r1 <= v.b.r1) r2 = v.a.r2;           // horizontal face
        else r2 = sum_rate - r1;                 // sum-rate face, then vertical at D
        if (!(r2 > 0.0)) continue;
        best = std::min(best, std::max(latency_of(r1, pl1), latency_of(r2, pl2)));
    }
    return best;
}

}  // namespace

double paired_grid_oracle(const Scenario& sc, int alpha_grid, int split_grid) {
    validate(sc);
    if (alpha_grid < 1 || split_grid < 2)
        throw std::invalid_argument("paired_grid_oracle: grids too small");
    const std::vector<PairConfig> pairs = pair_strong_weak(sc);
    const int m = static_cast<int>(pairs.size());
    if (m > 3) throw UnsupportedSizeError("paired_grid_oracle supports at most 3 pairs");
    const RadioEnv env = sc.env();

    // tau_m per pair per alpha step; compositions then only take maxima.
    std::vector<std::vector<double>> tau_at(m, std::vector<double>(alpha_grid + 1,
                                            std::numeric_limits<double>::infinity()));
    for (int i = 0; i < m; ++i)
        for (int j = 1; j <= alpha_grid; ++j)
            tau_at[i][j] = pair_grid_tau(pairs[i], static_cast<double>(j) / alpha_grid,
                                         split_grid, env);

    double best = std::numeric_limits<double>::infinity();
    if (m == 1) {
        best = tau_at[0][alpha_grid];
    } else if (m == 2) {
        for (int j = 1; j < alpha_grid; ++j)
            best = std::min(best, std::max(tau_at[0][j], tau_at[1][alpha_grid - j]));
    } else {
        for (int j1 = 1; j1 <= alpha_grid - 2; ++j1)
            for (int j2 = 1; j2 <= alpha_grid - 1 - j1; ++j2)
                best = std::min(best, std::max({tau_at[0][j1], tau_at[1][j2],
                                                tau_at[2][alpha_grid - j1 - j2]}));
    }
    return best;
}

}  // namespace rsma
