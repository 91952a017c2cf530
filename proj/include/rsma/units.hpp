#pragma once
#include <cmath>

namespace rsma {

inline constexpr double kLn2 = 0.6931471805599453;

// dB/dBm/bytes live only at config and I/O boundaries; everything past them
// is linear SI (watts, Hz, bits, seconds).
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Shannon rate in bits/s over a band with total in-band noise-plus-interference
// power noise_w. Stable for rx much smaller than noise_w.
inline double capacity_bps(double band_hz, double rx_power_w, double noise_w) {
    return band_hz * std::log1p(rx_power_w / noise_w) / kLn2;
}

}  // namespace rsma
