#pragma once

#include <optional>
#include <random>

#include "mrpost/scenario.hpp"
#include "mrpost/trajectory.hpp"

namespace mrpost {

struct RrtParams {
    double step = 0.2;          // extension step, L1 in the composite space
    double timeout_s = 30.0;    // wall-clock abort for unsolved instances
    long max_iterations = 200000;
};

/// Bidirectional RRT-Connect over the composite configuration space of all
/// robots (uniform sampling in the joint-limit box, straight-line steering
/// validated at spatial resolution dt*min(v_max)). The raw path is
/// retimed and resampled onto the scenario's dt grid; the result connects
/// the exact start and goal configs and passes validate. Returns nothing
/// on timeout.
std::optional<SyncTrajectory> plan_rrt_connect(const Scenario &scenario, std::mt19937_64 &rng,
                                               const RrtParams &params = {});

std::optional<SyncTrajectory> plan_rrt_connect(const Scenario &scenario, std::uint64_t seed,
                                               const RrtParams &params = {});

}  // namespace mrpost
