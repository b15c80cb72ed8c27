#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mrpost/geometry.hpp"

namespace mrpost {

/// One robot's configuration: joint angles (rad) for an arm,
/// workspace position (m) for a disc.
using Config = std::vector<double>;

struct JointInterval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class RobotKind { PlanarArm, Disc };

struct RobotModel {
    RobotKind kind = RobotKind::Disc;
    Vec2 base;                          // PlanarArm only
    std::vector<double> link_lengths;   // PlanarArm only, all > 0
    double link_radius = 0.05;          // PlanarArm only
    double disc_radius = 0.1;           // Disc only
    double v_max = 1.0;                 // cumulative L1 speed limit (rad/s or m/s)
    std::vector<JointInterval> limits;  // per joint (arm) or x/y bounds (disc)

    int dof() const {
        return kind == RobotKind::PlanarArm ? static_cast<int>(link_lengths.size()) : 2;
    }
};

struct Obstacle {
    enum class Shape { Circle, Rectangle };
    Shape shape = Shape::Circle;
    Vec2 center;          // Circle
    double radius = 0.0;  // Circle
    Rect rect;            // Rectangle
};

struct Scene {
    std::vector<RobotModel> robots;
    std::vector<Obstacle> obstacles;

    int num_robots() const { return static_cast<int>(robots.size()); }
};

/// World-frame collision geometry of one robot at one configuration.
/// A k-link arm yields k capsules, a disc one zero-length capsule.
struct BodyGeometry {
    std::vector<Capsule> capsules;
};

/// Joint angles are cumulative: link i points along the sum of angles 0..i,
/// chained from the base.
BodyGeometry forward_kinematics(const RobotModel &model, const Config &config);

bool within_limits(const RobotModel &model, const Config &config);

bool robots_collide(const Scene &scene, int i, const Config &ci, int j, const Config &cj);
bool robot_hits_obstacle(const Scene &scene, int i, const Config &ci);

/// True iff every robot is within limits and obstacle-free and every
/// pair of robots is mutually collision-free.
bool composite_config_valid(const Scene &scene, const std::vector<Config> &configs);

}  // namespace mrpost
