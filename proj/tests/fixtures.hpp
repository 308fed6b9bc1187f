#pragma once

#include <string>

#include "normpatrol/normpatrol.hpp"

namespace testing_fixtures {

inline std::string fixture_path(const std::string& name) {
    return std::string(NORMPATROL_SCENARIO_DIR) + "/" + name + ".scn";
}

inline normpatrol::Scenario fixture(const std::string& name, const std::string& config = "") {
    return normpatrol::apply_overrides(normpatrol::load_scenario(fixture_path(name)),
                                       normpatrol::parse_config(config));
}

inline normpatrol::PlanResult plan_of(const normpatrol::PlanOutcome& o) { return std::get<normpatrol::PlanResult>(o); }

inline bool crosses_person(const normpatrol::GridMap& map, const std::vector<normpatrol::Position>& route) {
    for (auto p : route)
        if (map.at(p) == normpatrol::Terrain::Person) return true;
    return false;
}

}  // namespace testing_fixtures
