#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rsma/rates.hpp"
#include "rsma/units.hpp"

using namespace rsma;

namespace {

UserRadio make_user(int id, double gain, double p_max, std::int64_t bits = 800) {
    return {id, gain, p_max, bits};
}

PairConfig make_pair(double h1, double p1, double h2, double p2,
                     std::int64_t bits1 = 800, std::int64_t bits2 = 800) {
    PairConfig pc;
    pc.user1 = make_user(0, h1, p1, bits1);
    pc.user2 = make_user(1, h2, p2, bits2);
    return pc;
}

}  // namespace

TEST_CASE("single stream at 0 dB SNR") {
    const RadioEnv env{1e6, 1e-21};
    // h*p equal to the in-band noise power
    const std::vector<Stream> streams = {{{0, 1}, 1e-21 * 1e6}};
    const DecodingOrder order{{{0, 1}}};
    const auto rates = sic_rate_vector(streams, order, env);
    CHECK(rates[0] == doctest::Approx(1e6).epsilon(1e-12));
}

TEST_CASE("zero powers give zero rates") {
    const RadioEnv env{1e6, 1e-21};
    const std::vector<Stream> streams = {{{0, 1}, 0.0}, {{0, 2}, 0.0}, {{1, 1}, 0.0}};
    const DecodingOrder order{{{1, 1}, {0, 2}, {0, 1}}};
    for (double r : sic_rate_vector(streams, order, env)) CHECK(r == 0.0);
}

TEST_CASE("SIC total rate does not depend on the order") {
    const RadioEnv env{2e6, 4e-21};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (int trial = 0; trial < 200; ++trial) {
        const int n_streams = 2 + static_cast<int>(rng() % 5);  // up to 6
        std::vector<Stream> streams;
        for (int i = 0; i < n_streams; ++i)
            streams.push_back({{i / 2, 1 + (i % 2)}, 1e-15 * u01(rng)});

        DecodingOrder order;
        for (const Stream& s : streams) order.sequence.push_back(s.id);

        double rx_total = 0.0;
        for (const Stream& s : streams) rx_total += s.rx_power_w;
        const double expected =
            capacity_bps(env.bandwidth_hz, rx_total, env.noise_psd_w_per_hz * env.bandwidth_hz);

        for (int shuffle = 0; shuffle < 4; ++shuffle) {
            std::shuffle(order.sequence.begin(), order.sequence.end(), rng);
            const auto rates = sic_rate_vector(streams, order, env);
            double total = 0.0;
            for (double r : rates) total += r;
            CHECK(total == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("per-stream rate monotone in own and later powers") {
    const RadioEnv env{1e6, 1e-21};
    std::vector<Stream> streams = {{{0, 1}, 3e-15}, {{1, 1}, 2e-15}, {{2, 1}, 1e-15}};
    const DecodingOrder order{{{0, 1}, {1, 1}, {2, 1}}};
    const auto base = sic_rate_vector(streams, order, env);

    // raising stream 0's own power raises its rate
    auto bumped = streams;
    bumped[0].rx_power_w *= 1.5;
    CHECK(sic_rate_vector(bumped, order, env)[0] > base[0]);

    // raising a later-decoded stream's power lowers stream 0's rate
    bumped = streams;
    bumped[2].rx_power_w *= 1.5;
    const auto after = sic_rate_vector(bumped, order, env);
    CHECK(after[0] < base[0]);
    CHECK(after[1] < base[1]);
    CHECK(after[2] > base[2]);
}

TEST_CASE("sic_rate_vector rejects a mismatched order") {
    const RadioEnv env{1e6, 1e-21};
    const std::vector<Stream> streams = {{{0, 1}, 1e-15}, {{1, 1}, 1e-15}};
    CHECK_THROWS_AS(sic_rate_vector(streams, DecodingOrder{{{0, 1}}}, env),
                    std::invalid_argument);
    CHECK_THROWS_AS(sic_rate_vector(streams, DecodingOrder{{{0, 1}, {2, 1}}}, env),
                    std::invalid_argument);
}

TEST_CASE("pair rates: telescoping sum and r12 behavior") {
    const RadioEnv env{1e6, 4e-21};
    const PairConfig pc = make_pair(2e-9, 0.2, 5e-10, 0.2);

    // p12 = 0 kills the late stream
    CHECK(pair_stream_rates(pc, 0.7, 0.1, 0.0, 0.15, env).r12 == 0.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = 0.05 + 0.95 * u01(rng);
        const double p11 = 0.2 * u01(rng), p12 = 0.2 * u01(rng), p2 = 0.2 * u01(rng);
        const PairRates r = pair_stream_rates(pc, alpha, p11, p12, p2, env);
        const double band = env.bandwidth_hz * alpha;
        const double rx = pc.user1.channel_gain * (p11 + p12) + pc.user2->channel_gain * p2;
        const double expected = capacity_bps(band, rx, env.noise_psd_w_per_hz * band);
        CHECK(r.r11 + r.r2 + r.r12 == doctest::Approx(expected).epsilon(1e-10));
    }

    CHECK_THROWS_AS(pair_stream_rates(pc, 0.0, 0.1, 0.1, 0.1, env), std::domain_error);
    CHECK_THROWS_AS(pair_stream_rates(pc, 0.5, -0.1, 0.1, 0.1, env), std::invalid_argument);
}

TEST_CASE("pair rates agree with the generic SIC model") {
    const RadioEnv env{1e6, 4e-21};
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const PairConfig pc = make_pair(1e-10 + 1e-9 * u01(rng), 0.2,
                                        1e-10 + 1e-9 * u01(rng), 0.2);
        const double alpha = 0.05 + 0.95 * u01(rng);
        const double p11 = 0.2 * u01(rng), p12 = 0.2 * u01(rng), p2 = 0.2 * u01(rng);
        const PairRates r = pair_stream_rates(pc, alpha, p11, p12, p2, env);

        const RadioEnv sub_band{env.bandwidth_hz * alpha, env.noise_psd_w_per_hz};
        const std::vector<Stream> streams = {
            {{0, 1}, pc.user1.channel_gain * p11},
            {{1, 1}, pc.user2->channel_gain * p2},
            {{0, 2}, pc.user1.channel_gain * p12},
        };
        const DecodingOrder order{{{0, 1}, {1, 1}, {0, 2}}};
        const auto v = sic_rate_vector(streams, order, sub_band);
        CHECK(r.r11 == doctest::Approx(v[0]).epsilon(1e-12));
        CHECK(r.r2 == doctest::Approx(v[1]).epsilon(1e-12));
        CHECK(r.r12 == doctest::Approx(v[2]).epsilon(1e-12));
    }
}

TEST_CASE("alpha on the full band equals alpha=1 on the scaled band") {
    const RadioEnv env{1e6, 4e-21};
    const PairConfig pc = make_pair(2e-9, 0.2, 5e-10, 0.2);
    const double alpha = 0.3725;
    const RadioEnv scaled{env.bandwidth_hz * alpha, env.noise_psd_w_per_hz};
    const PairRates a = pair_stream_rates(pc, alpha, 0.07, 0.05, 0.11, env);
    const PairRates b = pair_stream_rates(pc, 1.0, 0.07, 0.05, 0.11, scaled);
    CHECK(a.r11 == b.r11);
    CHECK(a.r2 == b.r2);
    CHECK(a.r12 == b.r12);
}

TEST_CASE("region vertices: faces and symmetry") {
    const RadioEnv env{1e6, 4e-21};
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const PairConfig pc = make_pair(1e-10 + 1e-9 * u01(rng), 0.1 + 0.2 * u01(rng),
                                        1e-10 + 1e-9 * u01(rng), 0.1 + 0.2 * u01(rng));
        const double alpha = 0.1 + 0.9 * u01(rng);
        const RegionVertices v = region_vertices(pc, alpha, env);
        const double band = env.bandwidth_hz * alpha;
        const double noise = env.noise_psd_w_per_hz * band;
        const double g1 = pc.user1.channel_gain * pc.user1.p_max_w;
        const double g2 = pc.user2->channel_gain * pc.user2->p_max_w;

        // corner rates straight from the closed forms
        CHECK(v.a.r1 == 0.0);
        CHECK(v.a.r2 == doctest::Approx(capacity_bps(band, g2, noise)).epsilon(1e-12));
        CHECK(v.b.r2 == doctest::Approx(v.a.r2).epsilon(1e-12));
        CHECK(v.b.r1 == doctest::Approx(capacity_bps(band, g1, g2 + noise)).epsilon(1e-12));
        CHECK(v.c.r1 == doctest::Approx(capacity_bps(band, g1, noise)).epsilon(1e-12));
        CHECK(v.d.r1 == doctest::Approx(v.c.r1).epsilon(1e-12));
        CHECK(v.d.r2 == 0.0);

        // B and C share the sum-rate face
        const double sum = capacity_bps(band, g1 + g2, noise);
        CHECK(v.b.r1 + v.b.r2 == doctest::Approx(sum).epsilon(1e-10));
        CHECK(v.c.r1 + v.c.r2 == doctest::Approx(sum).epsilon(1e-10));

        // growing the band grows every vertex rate
        const RegionVertices w = region_vertices(pc, std::min(1.0, alpha * 2.0), env);
        if (alpha * 2.0 <= 1.0) {
            CHECK(w.a.r2 > v.a.r2);
            CHECK(w.b.r1 > v.b.r1);
            CHECK(w.c.r1 > v.c.r1);
            CHECK(w.d.r1 > v.d.r1);
        }
    }
}

TEST_CASE("symmetric pair has mirrored vertices") {
    const RadioEnv env{1e6, 4e-21};
    const PairConfig pc = make_pair(1e-9, 0.2, 1e-9, 0.2);
    const RegionVertices v = region_vertices(pc, 0.5, env);
    CHECK(v.b.r1 == doctest::Approx(v.c.r2).epsilon(1e-12));
    CHECK(v.b.r2 == doctest::Approx(v.c.r1).epsilon(1e-12));
}

TEST_CASE("latency") {
    CHECK(latency_of(1e6, 8000.0) == doctest::Approx(8e-3).epsilon(1e-15));
    CHECK(latency_of(1e6, 0.0) == 0.0);
    CHECK(std::isinf(latency_of(0.0, 8000.0)));
    CHECK(std::isinf(latency_of(-1.0, 8000.0)));
}
