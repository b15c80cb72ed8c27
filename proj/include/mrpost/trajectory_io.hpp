#pragma once

#include <string>

#include "mrpost/trajectory.hpp"

namespace mrpost {

/// Line-oriented trajectory text format:
///
///   # comment
///   version 1
///   robots <N>
///   dof <d0> <d1> ... <dN-1>
///   step <t> <robot0 values> <robot1 values> ...
///
/// Timestamps must be strictly increasing and start at 0. Written files
/// round-trip doubles exactly.
void export_trajectory(const SyncTrajectory &traj, const std::string &path);
std::string trajectory_to_text(const SyncTrajectory &traj);

/// Raw parse result: timestamps (possibly non-uniform) plus per-robot
/// config sequences.
struct ParsedTrajectory {
    std::vector<double> times;
    std::vector<std::vector<Config>> states;
};
ParsedTrajectory parse_trajectory_text(const std::string &text, const std::string &context);

/// Imports an externally planned trajectory. Input already on a uniform
/// dt grid and valid is taken as-is; anything else (non-uniform stamps or
/// speed violations) is retimed by the max-speed formula and resampled to
/// the dt grid. Throws with violation coordinates if the result is still
/// invalid.
SyncTrajectory import_trajectory(const std::string &path, const Scene &scene, double dt = kDefaultDt);
SyncTrajectory import_trajectory_text(const std::string &text, const Scene &scene, double dt,
                                      const std::string &context);

}  // namespace mrpost
