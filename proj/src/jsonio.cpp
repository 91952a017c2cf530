#include "rsma/jsonio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rsma/units.hpp"

namespace rsma {

using nlohmann::json;

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["bandwidth_hz"] = sc.bandwidth_hz;
    j["noise_dbm_per_hz"] = watts_to_dbm(sc.noise_psd_w_per_hz);
    j["seed"] = sc.seed;
    j["users"] = json::array();
    for (const UserRadio& u : sc.users) {
        if (u.packet_bits % 8 != 0)
            throw std::invalid_argument("scenario json: packet_bits must be a whole byte count");
        json ju;
        ju["id"] = u.id;
        ju["gain_linear"] = u.channel_gain;
        ju["p_max_dbm"] = watts_to_dbm(u.p_max_w);
        ju["packet_bytes"] = u.packet_bits / 8;
        j["users"].push_back(ju);
    }
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    const json j = json::parse(text);
    Scenario sc;
    sc.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    sc.noise_psd_w_per_hz = dbm_to_watts(j.at("noise_dbm_per_hz").get<double>());
    sc.seed = j.value("seed", std::uint64_t{0});
    const DropConfig default_pl;  // default path-loss model for distance entries
    for (const json& ju : j.at("users")) {
        UserRadio u;
        u.id = ju.at("id").get<int>();
        const bool has_d = ju.contains("distance_km");
        const bool has_g = ju.contains("gain_linear");
        if (has_d == has_g)
            throw std::invalid_argument(
                "scenario json: each user needs exactly one of distance_km / gain_linear");
        u.channel_gain = has_g ? ju.at("gain_linear").get<double>()
                               : channel_gain_from_distance(
                                     ju.at("distance_km").get<double>(), default_pl);
        u.p_max_w = dbm_to_watts(ju.at("p_max_dbm").get<double>());
        u.packet_bits = 8 * ju.at("packet_bytes").get<std::int64_t>();
        sc.users.push_back(u);
    }
    std::sort(sc.users.begin(), sc.users.end(),
              [](const UserRadio& a, const UserRadio& b) { return a.id < b.id; });
    validate(sc);
    return sc;
}

void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << scenario_to_json(sc);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return scenario_from_json(ss.str());
}

std::string solution_to_json(const AllocationSolution& sol) {
    json j;
    j["scheme"] = "paired-rsma";
    j["tau_s"] = sol.tau_s;
    j["sum_alpha"] = sol.sum_alpha;
    j["iterations"] = sol.iterations;
    j["pairs"] = json::array();
    for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
        const PairConfig& p = sol.pairs[i];
        const CaseAllocation& a = sol.pair_allocations[i];
        json jp;
        jp["pair_index"] = p.pair_index;
        jp["user1"] = p.user1.id;
        if (p.user2) jp["user2"] = p.user2->id;
        jp["case"] = to_string(a.region_case);
        jp["alpha"] = a.alpha;
        jp["p11_w"] = a.p11;
        jp["p12_w"] = a.p12;
        jp["p2_w"] = a.p2;
        jp["r1_bps"] = a.r1;
        jp["r2_bps"] = a.r2;
        j["pairs"].push_back(jp);
    }
    j["user_latency_s"] = sol.user_latency_s;
    j["user_rate_bps"] = sol.user_rate_bps;
    return j.dump(2) + "\n";
}

std::string baseline_to_json(const BaselineSolution& sol) {
    json j;
    j["scheme"] = sol.scheme;
    j["tau_s"] = sol.tau_s;
    j["iterations"] = sol.iterations;
    j["sum_alpha"] = sol.sum_alpha;
    if (!sol.user_power_w.empty()) j["user_power_w"] = sol.user_power_w;
    if (!sol.pair_alpha.empty()) j["pair_alpha"] = sol.pair_alpha;
    if (!sol.decoding_order.empty()) {
        json order = json::array();
        for (const StreamId& s : sol.decoding_order)
            order.push_back({{"user", s.user}, {"part", s.part}});
        j["decoding_order"] = order;
    }
    if (sol.orders_enumerated > 0) j["orders_enumerated"] = sol.orders_enumerated;
    return j.dump(2) + "\n";
}

}  // namespace rsma
