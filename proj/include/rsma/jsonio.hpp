#pragma once
#include <string>

#include "rsma/baselines.hpp"
#include "rsma/pairalloc.hpp"
#include "rsma/scene.hpp"

namespace rsma {

// Scenario file schema:
//   { "bandwidth_hz": number, "noise_dbm_per_hz": number, "seed": integer,
//     "users": [ { "id": int, "distance_km": number | "gain_linear": number,
//                  "p_max_dbm": number, "packet_bytes": int } ] }
// Exactly one of distance_km / gain_linear per user. distance_km is converted
// with the default path-loss model of DropConfig; supply gain_linear for
// anything else.
std::string scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& sc, const std::string& path);
Scenario load_scenario(const std::string& path);

std::string solution_to_json(const AllocationSolution& sol);
std::string baseline_to_json(const BaselineSolution& sol);

}  // namespace rsma
