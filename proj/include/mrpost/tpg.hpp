#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mrpost/shortcut.hpp"

namespace mrpost {

/// Inter-robot precedence edge: (from_robot, from_step) must be reached
/// before (to_robot, to_step). Intra-robot (type-1) order is implicit in
/// the per-robot node lists.
struct TpgEdge {
    int from_robot = 0;
    int from_step = 0;
    int to_robot = 0;
    int to_step = 0;

    bool operator==(const TpgEdge &) const = default;
    auto operator<=>(const TpgEdge &) const = default;
};

/// Temporal plan graph over a synchronized trajectory: node (i, m) is
/// robot i's m-th configuration; type-2 edges order every spatially
/// colliding cross-robot config pair by its source-trajectory time.
struct Tpg {
    std::string scene_name;
    double dt = kDefaultDt;
    std::vector<std::vector<Config>> nodes;  // [robot][step]
    std::vector<TpgEdge> type2_edges;

    int num_robots() const { return static_cast<int>(nodes.size()); }
    int node_count(int robot) const { return static_cast<int>(nodes[robot].size()); }
    int total_nodes() const;
};

using NodeRef = std::pair<int, int>;  // (robot, step)

/// Builds the TPG from a valid trajectory. Throws if two robots collide at
/// the same timestep (impossible for a valid input) or if the edge set is
/// cyclic.
Tpg build_tpg(const SyncTrajectory &traj, const Scene &scene);

/// Transitive closure over type-1 and type-2 edges.
std::set<NodeRef> ancestors(const Tpg &tpg, int robot, int step);
std::set<NodeRef> descendants(const Tpg &tpg, int robot, int step);

bool is_acyclic(const Tpg &tpg);

/// Max-speed shortcut of robot i's nodes m..n. Interpolated configs are
/// checked against every other-robot node outside ancestors(v_m) and
/// descendants(v_n); on accept the segment is replaced and edges incident
/// to it are rebuilt. Rebuilds that produce a cycle, an unanchorable
/// precedence, an invalid schedule, or a longer schedule are rejected and
/// rolled back.
ShortcutOutcome attempt_tpg_shortcut(Tpg &tpg, int robot, int m, int n, const Scene &scene);

/// Earliest-start schedule: each node runs at 1 + max over its
/// predecessors' steps, robots wait in place while blocked. This is the
/// canonical trajectory (and makespan) extraction for a TPG.
SyncTrajectory tpg_schedule(const Tpg &tpg);

/// Debug check that every colliding cross-robot node pair is ordered by a
/// precedence path (the invariant incremental edge rebuilds must keep).
bool verify_edge_coverage(const Tpg &tpg, const Scene &scene);

/// Graphviz dot export for inspection.
std::string tpg_to_dot(const Tpg &tpg);

LoopResult run_tpg_loop(const SyncTrajectory &traj, const Scene &scene, const LoopOptions &opts);

}  // namespace mrpost
