#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mrpost/trajectory.hpp"

namespace mrpost {

enum class Method { Composite, Prioritized, Path, Tpg };
enum class EndpointKind { Randomized, ForwardLoop, BackwardLoop };
enum class RobotSelect { Random, RoundRobin };

const char *method_name(Method m);

/// How shortcut endpoint pairs (m, n) are enumerated. Pairs always satisfy
/// m + 2 <= n <= H-1; an (m, m+1) segment is a single straight step and can
/// never improve.
struct EndpointStrategy {
    EndpointKind kind = EndpointKind::Randomized;
    int m = 0;
    int n = -1;           // next pair for iterative kinds; -1 = start of a sweep
    int robot_cursor = 0; // round-robin robot selection

    void reset() {
        m = 0;
        n = -1;
    }
};

struct ShortcutCandidate {
    Method method = Method::Composite;
    int robot = -1;  // absent (-1) for Composite
    int m = 0;
    int n = 0;
};

enum class RejectReason { None, Collision, NotShorter };

struct ShortcutOutcome {
    bool accepted = false;
    RejectReason reject_reason = RejectReason::None;
    double time_spent = 0.0;            // s, single attempt including collision checks
    double rel_length_reduction = 0.0;  // the `d` of the DTS reward, 0 when rejected
    double makespan_after = 0.0;        // s
    long checks_performed = 0;          // collision predicate invocations
    // Per-method objective of the candidate segment: step counts for
    // composite/prioritized/tpg, L1 lengths for path.
    double objective_before = 0.0;
    double objective_after = 0.0;
};

/// Draws the next (m, n) pair for one horizon, or nothing when H < 3.
std::optional<std::pair<int, int>> next_endpoint_pair(EndpointStrategy &strategy, int horizon,
                                                      std::mt19937_64 &rng);

/// Draws the next candidate, or nothing when H < 3 (no admissible pair).
/// Randomized draws (m, n) uniformly over all admissible pairs; ForwardLoop
/// sweeps n upward from m+2 within an outer loop over m; BackwardLoop sweeps
/// n downward from H-1. For non-composite methods the robot index is chosen
/// per `robot_select`.
std::optional<ShortcutCandidate> next_candidate(EndpointStrategy &strategy, int horizon,
                                                RobotSelect robot_select, int num_robots,
                                                Method method, std::mt19937_64 &rng);

/// Straight-line replacement of steps m..n for all robots at once,
/// discretized so no robot exceeds its speed limit. Accepts iff the joint
/// segment is strictly shorter in steps and every interpolated composite
/// config is valid; on accept every robot's trajectory shrinks by the same
/// number of steps.
ShortcutOutcome attempt_composite(SyncTrajectory &traj, int m, int n, const Scene &scene);

/// Max-speed replacement of robot i's steps m..n, treating the other robots
/// as dynamic obstacles; the remaining trajectory shifts earlier and is
/// re-checked at its shifted times, with goal wait-padding restoring the
/// shared grid.
ShortcutOutcome attempt_prioritized(SyncTrajectory &traj, int robot, int m, int n, const Scene &scene);

/// Spatial replacement of robot i's steps m..n by the straight segment
/// discretized into the same number of configurations (slower motion, same
/// timesteps). Accepts iff strictly shorter in L1 length and collision-free
/// at the unchanged timesteps; callers retime + resample afterwards to
/// realize a makespan gain.
ShortcutOutcome attempt_path(SyncTrajectory &traj, int robot, int m, int n, const Scene &scene);

/// Drops trailing steps where every robot already sits at its goal.
void trim_goal_waits(SyncTrajectory &traj);

struct LoopBudget {
    double seconds = 5.0;
    long iterations = -1;  // >= 0 selects deterministic iteration-count mode

    bool exhausted_by_time() const { return iterations < 0; }
    bool positive() const { return iterations >= 0 ? iterations > 0 : seconds > 0.0; }
};

struct LogEntry {
    double wall = 0.0;  // s since loop start (virtual, checks-derived, in iteration mode)
    double makespan = 0.0;
    double path_length = 0.0;
    long candidates = 0;
    long valid = 0;
};

using AnytimeLog = std::vector<LogEntry>;

struct AcceptRecord {
    Method method = Method::Composite;
    double objective_before = 0.0;  // steps for composite/prioritized/tpg, L1 length for path
    double objective_after = 0.0;
};

struct LoopResult {
    SyncTrajectory trajectory;
    AnytimeLog log;
    long candidates = 0;
    long valid = 0;
    long checks = 0;
    double runtime_s = 0.0;
    std::vector<AcceptRecord> accepts;
    std::array<long, 4> sampled_by_method{};  // indexed by Method
    std::array<long, 4> valid_by_method{};
};

/// Per-iteration choice of shortcutting method, fed back with each outcome.
/// Implemented by the round-robin and Thompson-sampling selectors.
class MethodSelector {
  public:
    virtual ~MethodSelector() = default;
    virtual Method select(std::mt19937_64 &rng) = 0;
    virtual void observe(Method method, const ShortcutOutcome &outcome) = 0;
};

struct LoopOptions {
    Method method = Method::Path;
    EndpointKind endpoint = EndpointKind::Randomized;
    RobotSelect robot_select = RobotSelect::Random;
    LoopBudget budget;
    std::uint64_t seed = 0;
};

/// Anytime shortcut loop: repeatedly draws candidates and applies the
/// method until the budget expires. Iterative endpoint strategies restart
/// after any acceptance. The returned trajectory always passes validate.
LoopResult run_shortcut_loop(const SyncTrajectory &traj, const Scene &scene, const LoopOptions &opts);

/// Same loop with the method chosen per iteration by `selector`
/// (candidates are drawn with the Randomized endpoint strategy).
LoopResult run_selector_loop(const SyncTrajectory &traj, const Scene &scene, const LoopOptions &opts,
                             MethodSelector &selector);

}  // namespace mrpost
