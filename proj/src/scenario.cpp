#include "mrpost/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mrpost {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec2 parse_vec2(const json &j, const std::string &field) {
    if (!j.is_array() || j.size() != 2) {
        throw std::runtime_error(field + ": expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json vec2_to_json(const Vec2 &v) { return json::array({v.x, v.y}); }

RobotModel parse_robot(const json &j, int index) {
    const std::string ctx = "scene.robots[" + std::to_string(index) + "]";
    RobotModel r;
    const std::string kind = j.at("kind").get<std::string>();
    r.v_max = j.value("v_max", 1.0);
    if (r.v_max <= 0.0) {
        throw std::runtime_error(ctx + ": v_max must be positive");
    }
    if (kind == "disc") {
        r.kind = RobotKind::Disc;
        r.disc_radius = j.at("radius").get<double>();
        if (r.disc_radius <= 0.0) {
            throw std::runtime_error(ctx + ": radius must be positive");
        }
        if (j.contains("bounds")) {
            const auto lo = parse_vec2(j["bounds"].at(0), ctx + ".bounds[0]");
            const auto hi = parse_vec2(j["bounds"].at(1), ctx + ".bounds[1]");
            r.limits = {{lo.x, hi.x}, {lo.y, hi.y}};
        }
    } else if (kind == "planar_arm") {
        r.kind = RobotKind::PlanarArm;
        r.base = parse_vec2(j.at("base"), ctx + ".base");
        for (const auto &len : j.at("link_lengths")) {
            const double v = len.get<double>();
            if (v <= 0.0) {
                throw std::runtime_error(ctx + ": link lengths must be positive");
            }
            r.link_lengths.push_back(v);
        }
        if (r.link_lengths.empty()) {
            throw std::runtime_error(ctx + ": at least one link required");
        }
        r.link_radius = j.value("link_radius", 0.05);
        if (r.link_radius <= 0.0) {
            throw std::runtime_error(ctx + ": link_radius must be positive");
        }
        if (j.contains("joint_limits")) {
            for (const auto &iv : j["joint_limits"]) {
                r.limits.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
            }
            if (static_cast<int>(r.limits.size()) != r.dof()) {
                throw std::runtime_error(ctx + ": joint_limits size must equal link count");
            }
        } else {
            r.limits.assign(r.link_lengths.size(), {-kPi, kPi});
        }
    } else {
        throw std::runtime_error(ctx + ": unknown kind '" + kind + "'");
    }
    return r;
}

json robot_to_json(const RobotModel &r) {
    json j;
    j["v_max"] = r.v_max;
    if (r.kind == RobotKind::Disc) {
        j["kind"] = "disc";
        j["radius"] = r.disc_radius;
        if (r.limits.size() == 2) {
            j["bounds"] = json::array({json::array({r.limits[0].lo, r.limits[1].lo}),
                                       json::array({r.limits[0].hi, r.limits[1].hi})});
        }
    } else {
        j["kind"] = "planar_arm";
        j["base"] = vec2_to_json(r.base);
        j["link_lengths"] = r.link_lengths;
        j["link_radius"] = r.link_radius;
        json limits = json::array();
        for (const auto &iv : r.limits) {
            limits.push_back(json::array({iv.lo, iv.hi}));
        }
        j["joint_limits"] = limits;
    }
    return j;
}

Obstacle parse_obstacle(const json &j, int index) {
    const std::string ctx = "scene.obstacles[" + std::to_string(index) + "]";
    Obstacle o;
    const std::string type = j.at("type").get<std::string>();
    if (type == "circle") {
        o.shape = Obstacle::Shape::Circle;
        o.center = parse_vec2(j.at("center"), ctx + ".center");
        o.radius = j.at("radius").get<double>();
        if (o.radius <= 0.0) {
            throw std::runtime_error(ctx + ": radius must be positive");
        }
    } else if (type == "rect") {
        o.shape = Obstacle::Shape::Rectangle;
        o.rect.lo = parse_vec2(j.at("min"), ctx + ".min");
        o.rect.hi = parse_vec2(j.at("max"), ctx + ".max");
        if (o.rect.lo.x > o.rect.hi.x || o.rect.lo.y > o.rect.hi.y) {
            throw std::runtime_error(ctx + ": min corner must not exceed max corner");
        }
    } else {
        throw std::runtime_error(ctx + ": unknown type '" + type + "'");
    }
    return o;
}

json obstacle_to_json(const Obstacle &o) {
    json j;
    if (o.shape == Obstacle::Shape::Circle) {
        j["type"] = "circle";
        j["center"] = vec2_to_json(o.center);
        j["radius"] = o.radius;
    } else {
        j["type"] = "rect";
        j["min"] = vec2_to_json(o.rect.lo);
        j["max"] = vec2_to_json(o.rect.hi);
    }
    return j;
}

std::vector<Config> parse_configs(const json &j, const Scene &scene, const std::string &field) {
    if (!j.is_array() || static_cast<int>(j.size()) != scene.num_robots()) {
        throw std::runtime_error(field + ": expected one config per robot (" +
                                 std::to_string(scene.num_robots()) + ")");
    }
    std::vector<Config> out;
    for (int i = 0; i < scene.num_robots(); ++i) {
        Config c = j[i].get<Config>();
        if (static_cast<int>(c.size()) != scene.robots[i].dof()) {
            throw std::runtime_error(field + "[" + std::to_string(i) + "]: expected " +
                                     std::to_string(scene.robots[i].dof()) + " values");
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Names the first robot at fault so scenario authors can fix the file.
void check_composite(const Scene &scene, const std::vector<Config> &configs,
                     const std::string &field) {
    for (int i = 0; i < scene.num_robots(); ++i) {
        if (!within_limits(scene.robots[i], configs[i])) {
            throw std::runtime_error(field + ": robot " + std::to_string(i) + " outside limits");
        }
        if (robot_hits_obstacle(scene, i, configs[i])) {
            throw std::runtime_error(field + ": robot " + std::to_string(i) + " collides with an obstacle");
        }
    }
    for (int i = 0; i < scene.num_robots(); ++i) {
        for (int j = i + 1; j < scene.num_robots(); ++j) {
            if (robots_collide(scene, i, configs[i], j, configs[j])) {
                throw std::runtime_error(field + ": robots " + std::to_string(i) + " and " +
                                         std::to_string(j) + " collide");
            }
        }
    }
}

}  // namespace

double default_budget(const Scene &scene) {
    int arms = 0;
    for (const auto &r : scene.robots) {
        if (r.kind == RobotKind::PlanarArm) {
            ++arms;
        }
    }
    if (arms == 0) {
        return 5.0;
    }
    return arms <= 2 ? 10.0 : 60.0;
}

Scenario scenario_from_json_text(const std::string &text, const std::string &context) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::runtime_error(context + ": " + e.what());
    }
    try {
        Scenario sc;
        sc.name = j.value("name", "unnamed");
        sc.seed = j.value("seed", 0ULL);
        sc.dt = j.value("dt", 0.1);
        if (sc.dt <= 0.0) {
            throw std::runtime_error("dt must be positive");
        }
        const json &scene_j = j.at("scene");
        int idx = 0;
        for (const auto &rj : scene_j.at("robots")) {
            sc.scene.robots.push_back(parse_robot(rj, idx++));
        }
        if (sc.scene.robots.empty()) {
            throw std::runtime_error("scene.robots: at least one robot required");
        }
        idx = 0;
        if (scene_j.contains("obstacles")) {
            for (const auto &oj : scene_j["obstacles"]) {
                sc.scene.obstacles.push_back(parse_obstacle(oj, idx++));
            }
        }
        sc.budget_s = j.value("budget_s", default_budget(sc.scene));
        sc.starts = parse_configs(j.at("starts"), sc.scene, "starts");
        sc.goals = parse_configs(j.at("goals"), sc.scene, "goals");
        check_composite(sc.scene, sc.starts, "starts");
        check_composite(sc.scene, sc.goals, "goals");
        return sc;
    } catch (const json::exception &e) {
        throw std::runtime_error(context + ": " + e.what());
    } catch (const std::runtime_error &e) {
        throw std::runtime_error(context + ": " + e.what());
    }
}

std::string scenario_to_json_text(const Scenario &sc) {
    json j;
    j["format"] = "mrpost-scenario";
    j["version"] = 1;
    j["name"] = sc.name;
    j["seed"] = sc.seed;
    j["budget_s"] = sc.budget_s;
    j["dt"] = sc.dt;
    json robots = json::array();
    for (const auto &r : sc.scene.robots) {
        robots.push_back(robot_to_json(r));
    }
    json obstacles = json::array();
    for (const auto &o : sc.scene.obstacles) {
        obstacles.push_back(obstacle_to_json(o));
    }
    j["scene"] = {{"robots", robots}, {"obstacles", obstacles}};
    j["starts"] = sc.starts;
    j["goals"] = sc.goals;
    return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str(), path);
}

void save_scenario(const Scenario &scenario, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    out << scenario_to_json_text(scenario);
}

}  // namespace mrpost
