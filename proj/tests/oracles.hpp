#pragma once

// Independent oracle implementations used by the unit and acceptance
// suites. These deliberately take different computational routes than the
// library code they check.

#include <limits>
#include <set>
#include <vector>

#include "mrpost/tpg.hpp"
#include "mrpost/trajectory.hpp"
#include "mrpost/world.hpp"

namespace mrpost::oracles {

/// Minimum axis-to-axis distance between two capsules, found by densely
/// sampling points along each axis (step in meters of arc length) and
/// measuring point-to-segment distances. Overestimates the true minimum by
/// at most step/2.
inline double dense_axis_distance(const Capsule &a, const Capsule &b, double step = 1e-3) {
    double best = std::numeric_limits<double>::infinity();
    const auto scan = [&](const Capsule &p, const Capsule &q) {
        const Vec2 d = p.b - p.a;
        const double len = d.norm();
        const int samples = std::max(1, static_cast<int>(std::ceil(len / step)));
        for (int k = 0; k <= samples; ++k) {
            const Vec2 pt = p.a + d * (static_cast<double>(k) / samples);
            best = std::min(best, std::sqrt(point_segment_dist_sq(pt, q.a, q.b)));
        }
    };
    scan(a, b);
    scan(b, a);
    return best;
}

/// Signed clearance between two robots: min over capsule pairs of
/// (axis distance - radii sum), via the dense sampler.
inline double dense_robot_clearance(const Scene &scene, int i, const Config &ci, int j,
                                    const Config &cj, double step = 1e-3) {
    const BodyGeometry gi = forward_kinematics(scene.robots[i], ci);
    const BodyGeometry gj = forward_kinematics(scene.robots[j], cj);
    double best = std::numeric_limits<double>::infinity();
    for (const auto &a : gi.capsules) {
        for (const auto &b : gj.capsules) {
            best = std::min(best, dense_axis_distance(a, b, step) - (a.radius + b.radius));
        }
    }
    return best;
}

/// Signed clearance between one robot and all obstacles.
inline double dense_obstacle_clearance(const Scene &scene, int i, const Config &ci,
                                       double step = 1e-3) {
    const BodyGeometry g = forward_kinematics(scene.robots[i], ci);
    double best = std::numeric_limits<double>::infinity();
    for (const auto &cap : g.capsules) {
        for (const auto &obs : scene.obstacles) {
            if (obs.shape == Obstacle::Shape::Circle) {
                const Capsule c{obs.center, obs.center, obs.radius};
                best = std::min(best, dense_axis_distance(cap, c, step) - (cap.radius + obs.radius));
            } else {
                // sample the capsule axis against the solid rectangle
                const Vec2 d = cap.b - cap.a;
                const double len = d.norm();
                const int samples = std::max(1, static_cast<int>(std::ceil(len / step)));
                for (int k = 0; k <= samples; ++k) {
                    const Vec2 pt = cap.a + d * (static_cast<double>(k) / samples);
                    const double dx = std::max({obs.rect.lo.x - pt.x, 0.0, pt.x - obs.rect.hi.x});
                    const double dy = std::max({obs.rect.lo.y - pt.y, 0.0, pt.y - obs.rect.hi.y});
                    best = std::min(best, std::sqrt(dx * dx + dy * dy) - cap.radius);
                }
            }
        }
    }
    return best;
}

/// Term-by-term reimplementation of the max-ratio retiming rule, kept
/// separate from the library path.
inline std::vector<double> retime_oracle(const std::vector<std::vector<Config>> &states,
                                         const std::vector<double> &v_max) {
    const int robots = static_cast<int>(states.size());
    const int h = robots > 0 ? static_cast<int>(states[0].size()) : 0;
    // drop steps where nothing moved relative to the previous kept step
    std::vector<int> keep;
    for (int n = 0; n < h; ++n) {
        if (n == 0) {
            keep.push_back(0);
            continue;
        }
        bool moved = false;
        for (int i = 0; i < robots; ++i) {
            for (std::size_t k = 0; k < states[i][n].size(); ++k) {
                if (states[i][n][k] != states[i][keep.back()][k]) {
                    moved = true;
                }
            }
        }
        if (moved) {
            keep.push_back(n);
        }
    }
    std::vector<double> times(keep.size(), 0.0);
    for (std::size_t n = 1; n < keep.size(); ++n) {
        double interval = 0.0;
        for (int i = 0; i < robots; ++i) {
            double dist = 0.0;
            for (std::size_t k = 0; k < states[i][keep[n]].size(); ++k) {
                dist += std::abs(states[i][keep[n]][k] - states[i][keep[n - 1]][k]);
            }
            interval = std::max(interval, dist / v_max[i]);
        }
        times[n] = times[n - 1] + interval;
    }
    return times;
}

/// Brute-force O(N^2 H^2) type-2 edge enumeration.
inline std::vector<TpgEdge> tpg_edge_oracle(const SyncTrajectory &traj, const Scene &scene) {
    std::vector<TpgEdge> edges;
    const int robots = traj.num_robots();
    for (int i = 0; i < robots; ++i) {
        for (int j = 0; j < robots; ++j) {
            if (i == j) {
                continue;
            }
            for (int m = 0; m < traj.horizon(); ++m) {
                for (int n = 0; n < traj.horizon(); ++n) {
                    if (m < n && robots_collide(scene, i, traj.states[i][m], j, traj.states[j][n])) {
                        edges.push_back({i, m + 1, j, n});
                    }
                }
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

/// Transitive closure by Warshall's algorithm over the full node set.
struct ClosureOracle {
    std::vector<int> offset;
    int total = 0;
    std::vector<std::vector<char>> reach;

    explicit ClosureOracle(const Tpg &tpg) {
        for (int i = 0; i < tpg.num_robots(); ++i) {
            offset.push_back(total);
            total += tpg.node_count(i);
        }
        reach.assign(total, std::vector<char>(total, 0));
        for (int i = 0; i < tpg.num_robots(); ++i) {
            for (int s = 0; s + 1 < tpg.node_count(i); ++s) {
                reach[id(i, s)][id(i, s + 1)] = 1;
            }
        }
        for (const auto &e : tpg.type2_edges) {
            reach[id(e.from_robot, e.from_step)][id(e.to_robot, e.to_step)] = 1;
        }
        for (int k = 0; k < total; ++k) {
            for (int u = 0; u < total; ++u) {
                if (!reach[u][k]) {
                    continue;
                }
                for (int v = 0; v < total; ++v) {
                    if (reach[k][v]) {
                        reach[u][v] = 1;
                    }
                }
            }
        }
    }

    int id(int robot, int step) const { return offset[robot] + step; }

    std::set<NodeRef> set_of(const Tpg &tpg, int robot, int step, bool forward) const {
        std::set<NodeRef> out;
        for (int i = 0; i < tpg.num_robots(); ++i) {
            for (int s = 0; s < tpg.node_count(i); ++s) {
                const bool hit = forward ? reach[id(robot, step)][id(i, s)]
                                         : reach[id(i, s)][id(robot, step)];
                if (hit) {
                    out.insert({i, s});
                }
            }
        }
        return out;
    }
};

/// Independent path-length summation.
inline double path_length_oracle(const SyncTrajectory &traj) {
    double total = 0.0;
    for (const auto &robot : traj.states) {
        for (std::size_t n = 1; n < robot.size(); ++n) {
            for (std::size_t k = 0; k < robot[n].size(); ++k) {
                total += std::abs(robot[n][k] - robot[n - 1][k]);
            }
        }
    }
    return total;
}

}  // namespace mrpost::oracles
