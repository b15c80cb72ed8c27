#pragma once

// Hand-built scenes and trajectories shared by the unit and acceptance
// suites. Configs are computed from closed-form step formulas (never by
// accumulating sums) so expected collision margins hold exactly.

#include <cmath>

#include "mrpost/scenario.hpp"
#include "mrpost/trajectory.hpp"

namespace mrpost::fixtures {

inline RobotModel disc(double radius = 0.1, double v_max = 1.0, double bound = 5.0) {
    RobotModel r;
    r.kind = RobotKind::Disc;
    r.disc_radius = radius;
    r.v_max = v_max;
    r.limits = {{-bound, bound}, {-bound, bound}};
    return r;
}

inline RobotModel arm(Vec2 base, std::vector<double> links, double link_radius = 0.05,
                      double v_max = 1.0) {
    RobotModel r;
    r.kind = RobotKind::PlanarArm;
    r.base = base;
    r.link_lengths = std::move(links);
    r.link_radius = link_radius;
    r.v_max = v_max;
    r.limits.assign(r.link_lengths.size(), {-3.14159265358979323846, 3.14159265358979323846});
    return r;
}

struct Fig2Fixture {
    Scene scene;
    SyncTrajectory traj;
    int robot = 0;  // designated robot for prioritized/path candidates
    int m = 0;
    int n = 0;  // designated span
};

/// Three discs on parallel lanes, all with the same triangular detour
/// (up-right then down-right). Any span crossing the corner admits a
/// composite shortcut; no robot ever comes near another.
inline Fig2Fixture make_fig2a() {
    Fig2Fixture f;
    for (int i = 0; i < 3; ++i) {
        f.scene.robots.push_back(disc());
    }
    f.traj.dt = 0.1;
    f.traj.scene_name = "fig2a";
    f.traj.states.resize(3);
    for (int i = 0; i < 3; ++i) {
        const double lane = static_cast<double>(i);
        for (int k = 0; k <= 20; ++k) {
            const double x = 0.05 * k;
            const double y = k <= 10 ? lane + 0.05 * k : lane + 0.05 * (20 - k);
            f.traj.states[i].push_back({x, y});
        }
    }
    f.robot = -1;
    f.m = 0;
    f.n = 20;
    return f;
}

/// Robot 0 detours over a crossing lane which robot 1 traverses at max
/// speed. At the designated span, only the prioritized shortcut is valid:
/// robot 0 can pass the crossing before robot 1 arrives, while the slower
/// path shortcut meets robot 1 head-on and the composite one cannot
/// shorten robot 1's already-tight segment.
inline Fig2Fixture make_fig2b() {
    Fig2Fixture f;
    f.scene.robots.push_back(disc());
    f.scene.robots.push_back(disc());
    f.traj.dt = 0.1;
    f.traj.scene_name = "fig2b";
    f.traj.states.resize(2);
    for (int k = 0; k <= 12; ++k) {
        double x = 0.0, y = 0.0;
        if (k <= 3) {
            y = 0.1 * k;
        } else if (k <= 9) {
            x = 0.1 * (k - 3);
            y = 0.3;
        } else {
            x = 0.6;
            y = 0.1 * (12 - k);
        }
        f.traj.states[0].push_back({x, y});
        f.traj.states[1].push_back({0.3, -0.9 + 0.1 * k});
    }
    f.robot = 0;
    f.m = 0;
    f.n = 12;
    return f;
}

/// Robot 1 bends around a static obstacle and crosses robot 0's straight
/// chord early. Only the path shortcut of robot 0 is valid: at unchanged
/// timesteps robot 0 reaches the crossing after robot 1 has left, while
/// the max-speed prioritized shortcut arrives during the crossing and the
/// composite chord drives robot 1 into the obstacle.
inline Fig2Fixture make_fig2c() {
    Fig2Fixture f;
    f.scene.robots.push_back(disc());
    f.scene.robots.push_back(disc());
    Obstacle obs;
    obs.shape = Obstacle::Shape::Circle;
    obs.center = {0.7, 0.6};
    obs.radius = 0.05;
    f.scene.obstacles.push_back(obs);
    f.traj.dt = 0.1;
    f.traj.scene_name = "fig2c";
    f.traj.states.resize(2);
    for (int k = 0; k <= 20; ++k) {
        double x = 0.0, y = 0.0;
        if (k <= 4) {
            y = 0.1 * k;
        } else if (k <= 16) {
            x = 0.1 * (k - 4);
            y = 0.4;
        } else {
            x = 1.2;
            y = 0.1 * (20 - k);
        }
        f.traj.states[0].push_back({x, y});
        if (k <= 2) {
            f.traj.states[1].push_back({0.7 + 0.1 * k, 0.8});
        } else if (k <= 14) {
            f.traj.states[1].push_back({0.9, 1.0 - 0.1 * k});
        } else {
            f.traj.states[1].push_back({0.9, -0.4});
        }
    }
    f.robot = 0;
    f.m = 0;
    f.n = 20;
    return f;
}

/// Single disc overshooting past the goal: right 0.6, up 0.4, back
/// left 0.2. The straight chord has L1 length 0.8 vs 1.2 travelled, so
/// every method converges to makespan 0.8 s.
inline Fig2Fixture make_overshoot_single() {
    Fig2Fixture f;
    f.scene.robots.push_back(disc());
    f.traj.dt = 0.1;
    f.traj.scene_name = "overshoot";
    f.traj.states.resize(1);
    for (int k = 0; k <= 12; ++k) {
        double x = 0.0, y = 0.0;
        if (k <= 6) {
            x = 0.1 * k;
        } else if (k <= 10) {
            x = 0.6;
            y = 0.1 * (k - 6);
        } else {
            x = 0.6 - 0.1 * (k - 10);
            y = 0.4;
        }
        f.traj.states[0].push_back({x, y});
    }
    f.robot = 0;
    f.m = 0;
    f.n = 12;
    return f;
}

/// The overshoot robot plus a fast disc crossing its chord region early
/// (time-separated): shortcutting robot 0 is always geometrically safe and
/// robot 1 is far below its speed limit, so robot 0's straight-line travel
/// time is a hard lower bound that greedy path shortcutting reaches from
/// any acceptance order.
inline Fig2Fixture make_crossing_pair() {
    Fig2Fixture f = make_overshoot_single();
    f.traj.scene_name = "crossing_pair";
    f.scene.robots.push_back(disc(0.1, 8.0));
    f.traj.states.resize(2);
    for (int k = 0; k <= 12; ++k) {
        const double y = k <= 4 ? 0.9 - 0.4 * k : -0.7;
        f.traj.states[1].push_back({0.5, y});
    }
    return f;
}

/// Robot 0 passes (0,0)->(0.5,0) through the origin at step 3; robot 1
/// crosses the origin perpendicularly at step 7 moving 0.2 per step.
/// Colliding cross-time pairs (hand-enumerated): robot 0 steps 2,3,4 with
/// robot 1 step 7, giving type-2 edges (0,3),(0,4),(0,5) -> (1,7).
inline Fig2Fixture make_tpg_crossing() {
    Fig2Fixture f;
    f.scene.robots.push_back(disc());
    f.scene.robots.push_back(disc(0.1, 2.0));
    f.traj.dt = 0.1;
    f.traj.scene_name = "tpg_crossing";
    f.traj.states.resize(2);
    for (int k = 0; k <= 8; ++k) {
        f.traj.states[0].push_back({0.1 * (k - 3), 0.0});
        f.traj.states[1].push_back({0.0, 0.2 * (k - 7)});
    }
    return f;
}

/// Robot 1 parks for a while, then moves to a pose near robot 0's straight
/// chord. The synchronized timing never brings the robots close, so the
/// TPG has zero type-2 edges and a TPG shortcut must clear robot 1's
/// entire path; a prioritized shortcut of the same span is accepted.
inline Fig2Fixture make_tpg_conservative() {
    Fig2Fixture f;
    f.scene.robots.push_back(disc());
    f.scene.robots.push_back(disc());
    f.traj.dt = 0.1;
    f.traj.scene_name = "tpg_conservative";
    f.traj.states.resize(2);
    for (int k = 0; k <= 13; ++k) {
        // robot 0: detour over y = 0.3 from (0,0) to (0.6,0), then a goal wait
        double x = 0.0, y = 0.0;
        if (k <= 3) {
            y = 0.1 * k;
        } else if (k <= 9) {
            x = 0.1 * (k - 3);
            y = 0.3;
        } else if (k <= 12) {
            x = 0.6;
            y = 0.1 * (12 - k);
        } else {
            x = 0.6;
        }
        f.traj.states[0].push_back({x, y});
        // robot 1: parked, then moves toward (0.3, -0.1) near robot 0's chord
        if (k <= 5) {
            f.traj.states[1].push_back({0.6, -0.6});
        } else if (k <= 8) {
            f.traj.states[1].push_back({0.6 - 0.1 * (k - 5), -0.6});
        } else {
            f.traj.states[1].push_back({0.3, -0.6 + 0.1 * (k - 8)});
        }
    }
    f.robot = 0;
    f.m = 0;
    f.n = 12;
    return f;
}

/// A scene where, over every admissible span, only path shortcuts are
/// valid: robot 1 moves at max speed for the whole horizon (composite can
/// never shorten it), and its late crossing sits just ahead of robot 0's
/// goal so any prioritized time shift collides while the timestep-
/// preserving path replacement stays clear.
inline Fig2Fixture make_path_only() {
    Fig2Fixture f;
    f.scene.robots.push_back(disc());
    f.scene.robots.push_back(disc(0.1, 2.0));
    f.traj.dt = 0.1;
    f.traj.scene_name = "path_only";
    f.traj.states.resize(2);
    for (int k = 0; k <= 12; ++k) {
        double x = 0.0, y = 0.0;
        if (k == 0) {
            // start
        } else if (k <= 9) {
            x = 0.1 * (k - 1);
            y = 0.1;
        } else {
            x = 0.8 + 0.1 * (k - 10);
            y = 0.0;
        }
        f.traj.states[0].push_back({x, y});
        f.traj.states[1].push_back({1.05, 1.9 - 0.2 * k});
    }
    f.robot = 0;
    f.m = 0;
    f.n = 12;
    return f;
}

}  // namespace mrpost::fixtures
