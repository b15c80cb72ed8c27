#pragma once

#include <string>
#include <vector>

#include "mrpost/world.hpp"

namespace mrpost {

constexpr double kDefaultDt = 0.1;       // uniform timestep (s)
constexpr double kVelocitySlack = 1e-9;  // headroom on the per-step speed bound
constexpr double kZeroVecNorm = 1e-12;   // below this a step vector counts as a wait
constexpr double kLengthTol = 1e-6;      // tolerance for path-length comparisons

/// Synchronized multi-robot trajectory on a shared uniform time grid.
/// states[i][n] is robot i's configuration at time n*dt; every robot has
/// the same horizon (robots that finish early repeat their goal config).
struct SyncTrajectory {
    std::string scene_name;
    double dt = kDefaultDt;
    std::vector<std::vector<Config>> states;  // [robot][step]

    int num_robots() const { return static_cast<int>(states.size()); }
    int horizon() const { return states.empty() ? 0 : static_cast<int>(states[0].size()); }
};

/// Shared strictly-increasing timestamps, one config per robot per stamp.
/// Produced by retiming; times[0] == 0.
struct NonUniformTrajectory {
    std::vector<double> times;
    std::vector<std::vector<Config>> states;  // [robot][index]

    int num_robots() const { return static_cast<int>(states.size()); }
    int size() const { return static_cast<int>(times.size()); }
};

struct Metrics {
    double makespan = 0.0;                 // s
    double path_length = 0.0;              // rad (or m)
    double directional_consistency = 0.0;  // >= 0, 0 for perfectly straight paths
    double runtime = 0.0;                  // s spent by the post-processing step
};

struct Violation {
    enum class Kind { Dimension, Velocity, JointLimit, Obstacle, RobotRobot };
    Kind kind = Kind::Velocity;
    int robot = -1;
    int other_robot = -1;  // RobotRobot only
    int step = -1;
    std::string detail;
};

double l1_dist(const Config &a, const Config &b);

/// Componentwise (1-s)*a + s*b; s must lie in [0,1].
Config interpolate(const Config &a, const Config &b, double s);

/// Evenly spaced configs from a to b including both endpoints, sized so
/// that no step exceeds dt*v_max. Returns K+1 configs with
/// K = max(1, ceil(l1_dist(a,b) / (dt*v_max))).
std::vector<Config> discretize_segment(const Config &a, const Config &b, double dt, double v_max);

/// Step count K used by discretize_segment (exposed so callers can test
/// shortcut admissibility without materializing the segment).
int segment_step_count(double length, double dt, double v_max);

/// Reassigns timestamps so the fastest robot in each interval moves at its
/// speed limit: t_n = t_{n-1} + max_i d(C^i_n, C^i_{n-1}) / v^i_max.
/// Steps where every robot is stationary are dropped first.
NonUniformTrajectory retime(const SyncTrajectory &traj, const Scene &scene);
NonUniformTrajectory retime_states(const std::vector<std::vector<Config>> &states, const Scene &scene);

/// Linear interpolation onto a uniform dt grid; the final step is clamped
/// to the exact final time so goal configs are preserved bit-for-bit.
SyncTrajectory resample_uniform(const NonUniformTrajectory &traj, const Scene &scene, double dt);

double makespan(const SyncTrajectory &traj);
double makespan(const NonUniformTrajectory &traj);

/// Total L1 motion of all robots; wait steps contribute zero.
double path_length(const SyncTrajectory &traj);

/// Sum over robots and consecutive step-vector pairs of (1 - cosine
/// similarity); vectors with Euclidean norm below kZeroVecNorm are skipped.
double directional_consistency(const SyncTrajectory &traj);

/// Last step at which robot i is not yet parked at its final config.
int last_motion_step(const SyncTrajectory &traj, int robot);

/// Every velocity, joint-limit, or collision violation with coordinates.
/// Empty result <=> trajectory is valid. Collisions are checked at the
/// discrete timesteps; `substep_resolution` > 0 additionally checks
/// interpolated configurations between steps at that L1 spacing
/// (off by default, matching the per-timestep checking model).
std::vector<Violation> validate(const SyncTrajectory &traj, const Scene &scene,
                                double substep_resolution = 0.0);

Metrics compute_metrics(const SyncTrajectory &traj, double runtime = 0.0);

}  // namespace mrpost
