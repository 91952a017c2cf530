#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "rsma/scene.hpp"

namespace rsma {

// One of the (up to) two sub-messages a user transmits.
struct StreamId {
    int user = 0;
    int part = 1;  // 1 or 2
    friend bool operator==(const StreamId&, const StreamId&) = default;
};

struct Stream {
    StreamId id;
    double rx_power_w = 0.0;  // h * p as received at the BS
};

// Base-station decode sequence, first decoded first. A stream decoded at
// position k sees every later stream as interference.
struct DecodingOrder {
    std::vector<StreamId> sequence;
};

// Per-stream rates for an arbitrary SIC order over the full given band.
// Result is aligned with `streams`; order must be a permutation of their ids.
std::vector<double> sic_rate_vector(const std::vector<Stream>& streams,
                                    const DecodingOrder& order,
                                    const RadioEnv& env);

// A two-user pair: user1 is split into two streams and decoded first and
// last, user2 transmits a single stream decoded in between. user2 absent
// means a singleton pair (odd user counts).
struct PairConfig {
    UserRadio user1;
    std::optional<UserRadio> user2;
    int pair_index = 0;
};

struct PairRates {
    double r11 = 0.0;  // user1 first stream, bits/s
    double r2 = 0.0;   // user2, bits/s
    double r12 = 0.0;  // user1 second stream, bits/s
    double alpha = 0.0;
    double r1() const { return r11 + r12; }
};

// Three-stream rates of a pair inside its band fraction alpha, decode order
// fixed to x11 -> x2 -> x12. Zero powers are legal; alpha <= 0 is a domain
// error. For a singleton pair r2 = 0.
PairRates pair_stream_rates(const PairConfig& pair, double alpha,
                            double p11, double p12, double p2,
                            const RadioEnv& env);

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

// Corners of the pair's achievable region at full power caps: the boundary
// runs A (user2 alone) - B - C - D (user1 alone); AB is horizontal, BC is the
// sum-rate face, CD is vertical.
struct RegionVertices {
    RatePoint a, b, c, d;
};
RegionVertices region_vertices(const PairConfig& pair, double alpha,
                               const RadioEnv& env);

// packet_bits / rate; +infinity when the rate is not positive.
double latency_of(double rate_bps, double packet_bits);

}  // namespace rsma
