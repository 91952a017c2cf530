#include "rsma/scene.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "rsma/units.hpp"

namespace rsma {

namespace {

// Engine draws go through these two helpers only, so a scenario is a pure
// function of the seed regardless of standard-library distribution internals.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

constexpr double kMinDistanceKm = 1e-3;  // 1 m floor against singular gains

}  // namespace

void validate(const DropConfig& cfg) {
    if (cfg.n_users < 1) throw std::invalid_argument("drop: n_users must be >= 1");
    if (!(cfg.cell_radius_km > 0.0)) throw std::invalid_argument("drop: cell radius must be positive");
    if (cfg.packet_bytes_min <= 0 || cfg.packet_bytes_max < cfg.packet_bytes_min)
        throw std::invalid_argument("drop: need 0 < packet_bytes_min <= packet_bytes_max");
    if (!(cfg.bandwidth_hz > 0.0)) throw std::invalid_argument("drop: bandwidth must be positive");
    if (!std::isfinite(cfg.p_max_dbm) || !std::isfinite(cfg.noise_dbm_per_hz))
        throw std::invalid_argument("drop: power and noise levels must be finite");
}

void validate(const Scenario& sc) {
    if (sc.users.empty()) throw std::invalid_argument("scenario: needs at least one user");
    if (!(sc.bandwidth_hz > 0.0)) throw std::invalid_argument("scenario: bandwidth must be positive");
    if (!(sc.noise_psd_w_per_hz > 0.0)) throw std::invalid_argument("scenario: noise psd must be positive");
    std::vector<bool> seen(sc.users.size(), false);
    for (const UserRadio& u : sc.users) {
        if (u.id < 0 || static_cast<std::size_t>(u.id) >= sc.users.size() || seen[u.id])
            throw std::invalid_argument("scenario: user ids must be unique and contiguous from 0");
        seen[u.id] = true;
        if (!(u.channel_gain > 0.0))
            throw std::invalid_argument("scenario: user " + std::to_string(u.id) + " needs channel_gain > 0");
        if (!(u.p_max_w > 0.0))
            throw std::invalid_argument("scenario: user " + std::to_string(u.id) + " needs p_max > 0");
        if (u.packet_bits <= 0)
            throw std::invalid_argument("scenario: user " + std::to_string(u.id) + " needs packet_bits > 0");
    }
}

double channel_gain_from_distance(double d_km, const DropConfig& cfg) {
    if (!(d_km > 0.0)) throw std::domain_error("channel gain: distance must be positive");
    const double pl_db = cfg.pl_intercept_db + cfg.pl_slope_db_per_decade * std::log10(d_km);
    return db_to_linear(-pl_db);
}

Scenario generate_drop(const DropConfig& cfg) {
    validate(cfg);
    std::mt19937_64 rng(cfg.seed);
    const double p_max_w = dbm_to_watts(cfg.p_max_dbm);

    Scenario sc;
    sc.bandwidth_hz = cfg.bandwidth_hz;
    sc.noise_psd_w_per_hz = dbm_to_watts(cfg.noise_dbm_per_hz);
    sc.seed = cfg.seed;
    sc.users.reserve(cfg.n_users);
    for (int i = 0; i < cfg.n_users; ++i) {
        // Area-uniform placement on the disk: d = R * sqrt(U).
        const double d_km = std::max(cfg.cell_radius_km * std::sqrt(uniform01(rng)), kMinDistanceKm);
        UserRadio u;
        u.id = i;
        u.channel_gain = channel_gain_from_distance(d_km, cfg);
        u.p_max_w = p_max_w;
        u.packet_bits = 8 * uniform_int(rng, cfg.packet_bytes_min, cfg.packet_bytes_max);
        sc.users.push_back(u);
    }
    validate(sc);
    return sc;
}

}  // namespace rsma
