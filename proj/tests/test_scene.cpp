#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rsma/jsonio.hpp"
#include "rsma/scene.hpp"
#include "rsma/units.hpp"

using namespace rsma;

TEST_CASE("path loss anchor values") {
    DropConfig cfg;  // 128.1 + 37.6 log10(d)

    // d = 100 m: 128.1 - 37.6 = 90.5 dB of loss
    CHECK(channel_gain_from_distance(0.1, cfg) ==
          doctest::Approx(8.91250938133746e-10).epsilon(1e-12));

    // d = 1 km: the slope term vanishes
    CHECK(channel_gain_from_distance(1.0, cfg) ==
          doctest::Approx(std::pow(10.0, -12.81)).epsilon(1e-12));

    // doubling distance scales the gain by 10^(-slope * log10(2) / 10)
    const double ratio = channel_gain_from_distance(0.2, cfg) /
                         channel_gain_from_distance(0.1, cfg);
    CHECK(ratio == doctest::Approx(std::pow(10.0, -3.76 * std::log10(2.0))).epsilon(1e-12));

    CHECK_THROWS_AS(channel_gain_from_distance(0.0, cfg), std::domain_error);
    CHECK_THROWS_AS(channel_gain_from_distance(-1.0, cfg), std::domain_error);
}

TEST_CASE("generate_drop is deterministic in the seed") {
    DropConfig cfg;
    cfg.n_users = 4;
    cfg.seed = 42;
    const Scenario a = generate_drop(cfg);
    const Scenario b = generate_drop(cfg);
    CHECK(scenario_to_json(a) == scenario_to_json(b));

    cfg.seed = 43;
    CHECK(scenario_to_json(generate_drop(cfg)) != scenario_to_json(a));
}

TEST_CASE("generate_drop validates its config") {
    DropConfig cfg;
    cfg.n_users = 0;
    CHECK_THROWS_AS(generate_drop(cfg), std::invalid_argument);
    cfg = DropConfig{};
    cfg.packet_bytes_min = 100;
    cfg.packet_bytes_max = 50;
    CHECK_THROWS_AS(generate_drop(cfg), std::invalid_argument);
    cfg = DropConfig{};
    cfg.cell_radius_km = -1.0;
    CHECK_THROWS_AS(generate_drop(cfg), std::invalid_argument);
}

TEST_CASE("placement is area-uniform on the disk") {
    DropConfig cfg;
    cfg.n_users = 10000;
    cfg.seed = 2024;
    const Scenario sc = generate_drop(cfg);

    // invert the path loss back to distance and check E[d^2] = R^2 / 2
    double sum_d2 = 0.0;
    for (const UserRadio& u : sc.users) {
        const double pl_db = -linear_to_db(u.channel_gain);
        const double d_km = std::pow(10.0, (pl_db - cfg.pl_intercept_db) / cfg.pl_slope_db_per_decade);
        sum_d2 += d_km * d_km;
    }
    const double mean_d2 = sum_d2 / cfg.n_users;
    const double expected = cfg.cell_radius_km * cfg.cell_radius_km / 2.0;
    CHECK(std::abs(mean_d2 - expected) <= 0.02 * expected);
}

TEST_CASE("all generated users satisfy the type invariants") {
    DropConfig cfg;
    cfg.n_users = 7;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        cfg.seed = seed;
        const Scenario sc = generate_drop(cfg);
        CHECK_NOTHROW(validate(sc));
        for (const UserRadio& u : sc.users) {
            CHECK(u.channel_gain > 0.0);
            CHECK(u.p_max_w > 0.0);
            CHECK(u.packet_bits >= 8 * cfg.packet_bytes_min);
            CHECK(u.packet_bits <= 8 * cfg.packet_bytes_max);
            CHECK(u.packet_bits % 8 == 0);
        }
    }
}

TEST_CASE("dBm round trip") {
    for (double dbm = -200.0; dbm <= 60.0; dbm += 0.37) {
        const double back = watts_to_dbm(dbm_to_watts(dbm));
        CHECK(std::abs(back - dbm) <= 1e-12 * std::abs(dbm));
    }
}

TEST_CASE("scenario JSON round trip") {
    DropConfig cfg;
    cfg.n_users = 5;
    cfg.seed = 99;
    const Scenario sc = generate_drop(cfg);
    const Scenario back = scenario_from_json(scenario_to_json(sc));
    REQUIRE(back.users.size() == sc.users.size());
    CHECK(back.bandwidth_hz == sc.bandwidth_hz);
    CHECK(back.noise_psd_w_per_hz == doctest::Approx(sc.noise_psd_w_per_hz).epsilon(1e-12));
    for (std::size_t i = 0; i < sc.users.size(); ++i) {
        CHECK(back.users[i].id == sc.users[i].id);
        CHECK(back.users[i].channel_gain == sc.users[i].channel_gain);
        CHECK(back.users[i].p_max_w == doctest::Approx(sc.users[i].p_max_w).epsilon(1e-12));
        CHECK(back.users[i].packet_bits == sc.users[i].packet_bits);
    }
}

TEST_CASE("scenario JSON accepts distances, rejects ambiguous users") {
    const char* with_distance = R"({
        "bandwidth_hz": 1e6, "noise_dbm_per_hz": -174.0, "seed": 1,
        "users": [ {"id": 0, "distance_km": 0.1, "p_max_dbm": 23.0, "packet_bytes": 100} ]
    })";
    const Scenario sc = scenario_from_json(with_distance);
    CHECK(sc.users[0].channel_gain == doctest::Approx(8.91250938133746e-10).epsilon(1e-12));
    CHECK(sc.users[0].packet_bits == 800);

    const char* ambiguous = R"({
        "bandwidth_hz": 1e6, "noise_dbm_per_hz": -174.0, "seed": 1,
        "users": [ {"id": 0, "distance_km": 0.1, "gain_linear": 1e-9,
                    "p_max_dbm": 23.0, "packet_bytes": 100} ]
    })";
    CHECK_THROWS_AS(scenario_from_json(ambiguous), std::invalid_argument);

    const char* neither = R"({
        "bandwidth_hz": 1e6, "noise_dbm_per_hz": -174.0, "seed": 1,
        "users": [ {"id": 0, "p_max_dbm": 23.0, "packet_bytes": 100} ]
    })";
    CHECK_THROWS_AS(scenario_from_json(neither), std::invalid_argument);
}

TEST_CASE("scenario validation catches broken users") {
    Scenario sc;
    sc.bandwidth_hz = 1e6;
    sc.noise_psd_w_per_hz = 1e-20;
    sc.users.push_back({0, 1e-9, 0.1, 800});
    sc.users.push_back({0, 1e-9, 0.1, 800});  // duplicate id
    CHECK_THROWS_AS(validate(sc), std::invalid_argument);

    sc.users[1].id = 1;
    CHECK_NOTHROW(validate(sc));

    sc.users[1].channel_gain = 0.0;
    CHECK_THROWS_AS(validate(sc), std::invalid_argument);
}
