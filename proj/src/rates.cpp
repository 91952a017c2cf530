#include "rsma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsma/units.hpp"

namespace rsma {

std::vector<double> sic_rate_vector(const std::vector<Stream>& streams,
                                    const DecodingOrder& order,
                                    const RadioEnv& env) {
    if (order.sequence.size() != streams.size())
        throw std::invalid_argument("sic_rate_vector: order must cover every stream exactly once");
    if (!(env.bandwidth_hz > 0.0) || !(env.noise_psd_w_per_hz > 0.0))
        throw std::invalid_argument("sic_rate_vector: bandwidth and noise must be positive");

    const double noise = env.noise_psd_w_per_hz * env.bandwidth_hz;

    // Map order positions back to stream indices.
    std::vector<int> stream_at(order.sequence.size(), -1);
    std::vector<bool> used(streams.size(), false);
    for (std::size_t pos = 0; pos < order.sequence.size(); ++pos) {
        int found = -1;
        for (std::size_t i = 0; i < streams.size(); ++i) {
            if (!used[i] && streams[i].id == order.sequence[pos]) {
                found = static_cast<int>(i);
                break;
            }
        }
        if (found < 0)
            throw std::invalid_argument("sic_rate_vector: order names a stream not in the set");
        used[found] = true;
        stream_at[pos] = found;
    }

    std::vector<double> rates(streams.size(), 0.0);
    double interference = 0.0;
    for (std::size_t k = order.sequence.size(); k-- > 0;) {
        const Stream& s = streams[stream_at[k]];
        if (s.rx_power_w < 0.0)
            throw std::invalid_argument("sic_rate_vector: negative received power");
        rates[stream_at[k]] = capacity_bps(env.bandwidth_hz, s.rx_power_w, interference + noise);
        interference += s.rx_power_w;
    }
    return rates;
}

PairRates pair_stream_rates(const PairConfig& pair, double alpha,
                            double p11, double p12, double p2,
                            const RadioEnv& env) {
    if (!(alpha > 0.0)) throw std::domain_error("pair_stream_rates: alpha must be positive");
    if (p11 < 0.0 || p12 < 0.0 || p2 < 0.0)
        throw std::invalid_argument("pair_stream_rates: negative power");

    // alpha enters only through the band, so alpha on band B and alpha=1 on
    // band B*alpha are the same computation bit for bit.
    const double band = env.bandwidth_hz * alpha;
    const double noise = env.noise_psd_w_per_hz * band;
    const double g11 = pair.user1.channel_gain * p11;
    const double g12 = pair.user1.channel_gain * p12;
    const double g2 = pair.user2 ? pair.user2->channel_gain * p2 : 0.0;

    PairRates r;
    r.alpha = alpha;
    r.r11 = capacity_bps(band, g11, g2 + g12 + noise);
    r.r2 = pair.user2 ? capacity_bps(band, g2, g12 + noise) : 0.0;
    r.r12 = capacity_bps(band, g12, noise);
    return r;
}

RegionVertices region_vertices(const PairConfig& pair, double alpha,
                               const RadioEnv& env) {
    const double p1max = pair.user1.p_max_w;
    const double p2max = pair.user2 ? pair.user2->p_max_w : 0.0;

    RegionVertices v;
    {   // A: user2 alone at full power
        const PairRates r = pair_stream_rates(pair, alpha, 0.0, 0.0, p2max, env);
        v.a = {r.r1(), r.r2};
    }
    {   // B: user1 fully on its early stream
        const PairRates r = pair_stream_rates(pair, alpha, p1max, 0.0, p2max, env);
        v.b = {r.r1(), r.r2};
    }
    {   // C: user1 fully on its late (interference-free) stream
        const PairRates r = pair_stream_rates(pair, alpha, 0.0, p1max, p2max, env);
        v.c = {r.r1(), r.r2};
    }
    {   // D: user1 alone
        const PairRates r = pair_stream_rates(pair, alpha, 0.0, p1max, 0.0, env);
        v.d = {r.r1(), r.r2};
    }
    return v;
}

double latency_of(double rate_bps, double packet_bits) {
    if (!(rate_bps > 0.0)) return std::numeric_limits<double>::infinity();
    return packet_bits / rate_bps;
}

}  // namespace rsma
