#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrpost/world.hpp"

namespace mrpost {

/// One benchmark problem: a scene plus validated start and goal
/// configurations for every robot.
struct Scenario {
    std::string name;
    Scene scene;
    std::vector<Config> starts;
    std::vector<Config> goals;
    std::uint64_t seed = 0;
    double budget_s = 5.0;
    double dt = 0.1;
};

/// Default shortcutting budget by scene size: 5 s for disc scenes,
/// 10 s for two-arm scenes, 60 s for three or more arms.
double default_budget(const Scene &scene);

/// Loads and fully validates a scenario file, reporting parse errors with
/// field context and semantic errors (e.g. a colliding start) with the
/// offending robot index.
Scenario load_scenario(const std::string &path);
void save_scenario(const Scenario &scenario, const std::string &path);

std::string scenario_to_json_text(const Scenario &scenario);
Scenario scenario_from_json_text(const std::string &text, const std::string &context);

}  // namespace mrpost
