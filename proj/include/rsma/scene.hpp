#pragma once
#include <cstdint>
#include <vector>

namespace rsma {

// One uplink user in linear SI units.
struct UserRadio {
    int id = 0;
    double channel_gain = 0.0;     // linear power gain h > 0
    double p_max_w = 0.0;          // transmit power cap, watts
    std::int64_t packet_bits = 0;  // payload to deliver, bits
};

// Radio constants shared by every user of a scenario.
struct RadioEnv {
    double bandwidth_hz = 0.0;         // total band B
    double noise_psd_w_per_hz = 0.0;   // noise power spectral density
};

struct Scenario {
    std::vector<UserRadio> users;  // ids unique and contiguous from 0
    double bandwidth_hz = 0.0;
    double noise_psd_w_per_hz = 0.0;
    std::uint64_t seed = 0;

    RadioEnv env() const { return {bandwidth_hz, noise_psd_w_per_hz}; }
};

// Random user drop: a disk cell with log-distance path loss, identical power
// caps and uniform packet sizes. Defaults give a 200 m cell, 1 MHz band,
// -174 dBm/Hz noise, 23 dBm caps, 50-1200 byte packets.
struct DropConfig {
    int n_users = 4;
    double cell_radius_km = 0.2;
    double pl_intercept_db = 128.1;
    double pl_slope_db_per_decade = 37.6;
    int packet_bytes_min = 50;
    int packet_bytes_max = 1200;
    double p_max_dbm = 23.0;
    double bandwidth_hz = 1.0e6;
    double noise_dbm_per_hz = -174.0;
    std::uint64_t seed = 1;
};

// Throw std::invalid_argument when an invariant is violated.
void validate(const DropConfig& cfg);
void validate(const Scenario& sc);

// Linear power gain for a user at distance d_km under cfg's path-loss model.
// d_km <= 0 is a domain error.
double channel_gain_from_distance(double d_km, const DropConfig& cfg);

// Deterministic function of cfg (including cfg.seed). Users are placed
// area-uniformly on the disk with a 1 m distance floor.
Scenario generate_drop(const DropConfig& cfg);

}  // namespace rsma
