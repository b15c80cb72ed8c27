#include "mrpost/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace mrpost {

namespace {

// Flattened composite configuration across all robots.
using Composite = std::vector<double>;

struct CompositeSpace {
    const Scene &scene;
    std::vector<int> offsets;
    int total_dof = 0;
    std::vector<double> lo, hi;  // sampling box
    double resolution;           // steering validation step, composite L1

    explicit CompositeSpace(const Scene &s, double dt) : scene(s) {
        double min_v = scene.robots[0].v_max;
        for (const auto &r : scene.robots) {
            min_v = std::min(min_v, r.v_max);
        }
        resolution = dt * min_v;
        for (const auto &r : scene.robots) {
            offsets.push_back(total_dof);
            total_dof += r.dof();
            for (int k = 0; k < r.dof(); ++k) {
                if (static_cast<int>(r.limits.size()) > k) {
                    lo.push_back(r.limits[k].lo);
                    hi.push_back(r.limits[k].hi);
                } else {
                    lo.push_back(-1e3);
                    hi.push_back(1e3);
                }
            }
        }
    }

    Composite flatten(const std::vector<Config> &configs) const {
        Composite out;
        out.reserve(total_dof);
        for (const auto &c : configs) {
            out.insert(out.end(), c.begin(), c.end());
        }
        return out;
    }

    std::vector<Config> unflatten(const Composite &q) const {
        std::vector<Config> out(scene.num_robots());
        for (int i = 0; i < scene.num_robots(); ++i) {
            const int d = scene.robots[i].dof();
            out[i].assign(q.begin() + offsets[i], q.begin() + offsets[i] + d);
        }
        return out;
    }

    Composite sample(std::mt19937_64 &rng) const {
        Composite q(total_dof);
        for (int k = 0; k < total_dof; ++k) {
            std::uniform_real_distribution<double> dist(lo[k], hi[k]);
            q[k] = dist(rng);
        }
        return q;
    }

    double dist(const Composite &a, const Composite &b) const {
        double d = 0.0;
        for (int k = 0; k < total_dof; ++k) {
            d += std::abs(a[k] - b[k]);
        }
        return d;
    }

    bool valid(const Composite &q) const { return composite_config_valid(scene, unflatten(q)); }

    // All-or-nothing straight-line validity check at `resolution` spacing.
    bool edge_valid(const Composite &a, const Composite &b) const {
        const double d = dist(a, b);
        const int steps = std::max(1, static_cast<int>(std::ceil(d / resolution)));
        Composite q(total_dof);
        for (int k = 1; k <= steps; ++k) {
            const double s = static_cast<double>(k) / steps;
            for (int t = 0; t < total_dof; ++t) {
                q[t] = (1.0 - s) * a[t] + s * b[t];
            }
            if (!valid(q)) {
                return false;
            }
        }
        return true;
    }
};

struct Tree {
    std::vector<Composite> configs;
    std::vector<int> parents;

    int add(Composite q, int parent) {
        configs.push_back(std::move(q));
        parents.push_back(parent);
        return static_cast<int>(configs.size()) - 1;
    }

    int nearest(const CompositeSpace &space, const Composite &q) const {
        int best = 0;
        double best_d = space.dist(configs[0], q);
        for (std::size_t i = 1; i < configs.size(); ++i) {
            const double d = space.dist(configs[i], q);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    }
};

enum class ExtendStatus { Trapped, Advanced, Reached };

ExtendStatus extend(Tree &tree, const CompositeSpace &space, const Composite &target, double step,
                    int *new_index) {
    const int near = tree.nearest(space, target);
    const Composite &q_near = tree.configs[near];
    const double d = space.dist(q_near, target);
    Composite q_new;
    bool reached = false;
    if (d <= step) {
        q_new = target;
        reached = true;
    } else {
        q_new.resize(space.total_dof);
        const double s = step / d;
        for (int k = 0; k < space.total_dof; ++k) {
            q_new[k] = q_near[k] + s * (target[k] - q_near[k]);
        }
    }
    if (!space.edge_valid(q_near, q_new)) {
        return ExtendStatus::Trapped;
    }
    *new_index = tree.add(std::move(q_new), near);
    return reached ? ExtendStatus::Reached : ExtendStatus::Advanced;
}

ExtendStatus connect(Tree &tree, const CompositeSpace &space, const Composite &target, double step,
                     int *last_index) {
    while (true) {
        const ExtendStatus st = extend(tree, space, target, step, last_index);
        if (st != ExtendStatus::Advanced) {
            return st;
        }
    }
}

std::vector<Composite> trace(const Tree &tree, int index) {
    std::vector<Composite> path;
    for (int i = index; i >= 0; i = tree.parents[i]) {
        path.push_back(tree.configs[i]);
    }
    return path;  // leaf to root order
}

std::optional<SyncTrajectory> finalize(const CompositeSpace &space, const Scenario &scenario,
                                       const std::vector<Composite> &waypoints) {
    std::vector<std::vector<Config>> states(scenario.scene.num_robots());
    for (const auto &wp : waypoints) {
        auto configs = space.unflatten(wp);
        for (int i = 0; i < scenario.scene.num_robots(); ++i) {
            states[i].push_back(std::move(configs[i]));
        }
    }
    const NonUniformTrajectory retimed = retime_states(states, scenario.scene);
    SyncTrajectory traj = resample_uniform(retimed, scenario.scene, scenario.dt);
    traj.scene_name = scenario.name;
    if (!validate(traj, scenario.scene).empty()) {
        return std::nullopt;  // resampled grid hit an unchecked interpolation; keep planning
    }
    return traj;
}

}  // namespace

std::optional<SyncTrajectory> plan_rrt_connect(const Scenario &scenario, std::mt19937_64 &rng,
                                               const RrtParams &params) {
    const CompositeSpace space(scenario.scene, scenario.dt);
    const Composite start = space.flatten(scenario.starts);
    const Composite goal = space.flatten(scenario.goals);
    if (!space.valid(start) || !space.valid(goal)) {
        throw std::invalid_argument("plan_rrt_connect: invalid start or goal");
    }

    // Unobstructed instances connect directly.
    if (space.edge_valid(start, goal)) {
        if (auto traj = finalize(space, scenario, {start, goal})) {
            return traj;
        }
    }

    Tree start_tree, goal_tree;
    start_tree.add(start, -1);
    goal_tree.add(goal, -1);
    Tree *a = &start_tree;
    Tree *b = &goal_tree;
    bool a_is_start = true;

    const auto t0 = std::chrono::steady_clock::now();
    for (long iter = 0; iter < params.max_iterations; ++iter) {
        if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
            params.timeout_s) {
            return std::nullopt;
        }
        const Composite q_rand = space.sample(rng);
        int a_new = -1;
        if (extend(*a, space, q_rand, params.step, &a_new) != ExtendStatus::Trapped) {
            int b_new = -1;
            if (connect(*b, space, (*a).configs[a_new], params.step, &b_new) == ExtendStatus::Reached) {
                std::vector<Composite> from_a = trace(*a, a_new);   // meet -> a root
                std::vector<Composite> from_b = trace(*b, b_new);   // meet -> b root
                std::vector<Composite> waypoints;
                if (a_is_start) {
                    waypoints.assign(from_a.rbegin(), from_a.rend());
                    // from_b[0] duplicates the meeting config
                    waypoints.insert(waypoints.end(), from_b.begin() + 1, from_b.end());
                } else {
                    waypoints.assign(from_b.rbegin(), from_b.rend());
                    waypoints.insert(waypoints.end(), from_a.begin() + 1, from_a.end());
                }
                if (auto traj = finalize(space, scenario, waypoints)) {
                    return traj;
                }
            }
        }
        std::swap(a, b);
        a_is_start = !a_is_start;
    }
    return std::nullopt;
}

std::optional<SyncTrajectory> plan_rrt_connect(const Scenario &scenario, std::uint64_t seed,
                                               const RrtParams &params) {
    std::mt19937_64 rng(seed);
    return plan_rrt_connect(scenario, rng, params);
}

}  // namespace mrpost
