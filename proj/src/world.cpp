#include "mrpost/world.hpp"

#include <stdexcept>

namespace mrpost {

BodyGeometry forward_kinematics(const RobotModel &model, const Config &config) {
    if (static_cast<int>(config.size()) != model.dof()) {
        throw std::invalid_argument("forward_kinematics: config dimension " +
                                    std::to_string(config.size()) + " != robot dof " +
                                    std::to_string(model.dof()));
    }
    BodyGeometry geom;
    if (model.kind == RobotKind::Disc) {
        const Vec2 p{config[0], config[1]};
        geom.capsules.push_back({p, p, model.disc_radius});
        return geom;
    }
    geom.capsules.reserve(model.link_lengths.size());
    Vec2 p = model.base;
    double angle = 0.0;
    for (std::size_t k = 0; k < model.link_lengths.size(); ++k) {
        angle += config[k];
        const Vec2 q = p + Vec2{std::cos(angle), std::sin(angle)} * model.link_lengths[k];
        geom.capsules.push_back({p, q, model.link_radius});
        p = q;
    }
    return geom;
}

bool within_limits(const RobotModel &model, const Config &config) {
    if (static_cast<int>(config.size()) != model.dof()) {
        throw std::invalid_argument("within_limits: config dimension mismatch");
    }
    if (model.limits.empty()) {
        return true;
    }
    for (std::size_t k = 0; k < config.size(); ++k) {
        const auto &iv = model.limits[k];
        if (config[k] < iv.lo || config[k] > iv.hi) {
            return false;
        }
    }
    return true;
}

bool robots_collide(const Scene &scene, int i, const Config &ci, int j, const Config &cj) {
    if (i == j) {
        throw std::invalid_argument("robots_collide: i == j");
    }
    const BodyGeometry gi = forward_kinematics(scene.robots[i], ci);
    const BodyGeometry gj = forward_kinematics(scene.robots[j], cj);
    for (const Capsule &a : gi.capsules) {
        for (const Capsule &b : gj.capsules) {
            if (capsules_overlap(a, b)) {
                return true;
            }
        }
    }
    return false;
}

bool robot_hits_obstacle(const Scene &scene, int i, const Config &ci) {
    if (scene.obstacles.empty()) {
        return false;
    }
    const BodyGeometry g = forward_kinematics(scene.robots[i], ci);
    for (const Capsule &cap : g.capsules) {
        for (const Obstacle &obs : scene.obstacles) {
            if (obs.shape == Obstacle::Shape::Circle) {
                if (capsule_circle_overlap(cap, obs.center, obs.radius)) {
                    return true;
                }
            } else {
                if (capsule_rect_overlap(cap, obs.rect)) {
                    return true;
                }
            }
        }
    }
    return false;
}

bool composite_config_valid(const Scene &scene, const std::vector<Config> &configs) {
    const int n = scene.num_robots();
    if (static_cast<int>(configs.size()) != n) {
        throw std::invalid_argument("composite_config_valid: expected one config per robot");
    }
    for (int i = 0; i < n; ++i) {
        if (!within_limits(scene.robots[i], configs[i]) || robot_hits_obstacle(scene, i, configs[i])) {
            return false;
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (robots_collide(scene, i, configs[i], j, configs[j])) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace mrpost
