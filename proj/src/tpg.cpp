#include "mrpost/tpg.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "loop_clock.hpp"

namespace mrpost {

int Tpg::total_nodes() const {
    int total = 0;
    for (const auto &seq : nodes) {
        total += static_cast<int>(seq.size());
    }
    return total;
}

namespace {

// Flat adjacency over all nodes; type-1 edges are the implicit per-robot
// chains, type-2 edges come from the graph.
struct FlatGraph {
    std::vector<int> offset;
    int total = 0;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;

    int id(int robot, int step) const { return offset[robot] + step; }
};

FlatGraph make_graph(const Tpg &tpg) {
    FlatGraph g;
    g.offset.resize(tpg.num_robots());
    for (int i = 0; i < tpg.num_robots(); ++i) {
        g.offset[i] = g.total;
        g.total += tpg.node_count(i);
    }
    g.out.resize(g.total);
    g.in.resize(g.total);
    for (int i = 0; i < tpg.num_robots(); ++i) {
        for (int s = 0; s + 1 < tpg.node_count(i); ++s) {
            g.out[g.id(i, s)].push_back(g.id(i, s + 1));
            g.in[g.id(i, s + 1)].push_back(g.id(i, s));
        }
    }
    for (const TpgEdge &e : tpg.type2_edges) {
        g.out[g.id(e.from_robot, e.from_step)].push_back(g.id(e.to_robot, e.to_step));
        g.in[g.id(e.to_robot, e.to_step)].push_back(g.id(e.from_robot, e.from_step));
    }
    return g;
}

std::vector<char> reachable(const FlatGraph &g, int source, bool forward) {
    std::vector<char> seen(g.total, 0);
    std::deque<int> queue{source};
    const auto &adj = forward ? g.out : g.in;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
        }
    }
    return seen;
}

std::set<NodeRef> mask_to_set(const Tpg &tpg, const FlatGraph &g, const std::vector<char> &mask) {
    std::set<NodeRef> out;
    for (int i = 0; i < tpg.num_robots(); ++i) {
        for (int s = 0; s < tpg.node_count(i); ++s) {
            if (mask[g.id(i, s)]) {
                out.insert({i, s});
            }
        }
    }
    return out;
}

// Earliest start per node: type-1 edges advance one step, type-2 edges
// only order arrivals (a robot may enter its node on the same step its
// blocker is reached, matching the synchronized source semantics).
std::vector<int> earliest_starts(const Tpg &tpg, const FlatGraph &g) {
    std::vector<int> indeg(g.total, 0);
    for (int u = 0; u < g.total; ++u) {
        for (int v : g.out[u]) {
            ++indeg[v];
        }
    }
    std::vector<int> start(g.total, 0);
    std::deque<int> queue;
    for (int u = 0; u < g.total; ++u) {
        if (indeg[u] == 0) {
            queue.push_back(u);
        }
    }
    // chain edge iff v == u+1 within the same robot's id range
    std::vector<int> robot_of(g.total);
    for (int i = 0; i < tpg.num_robots(); ++i) {
        for (int s = 0; s < tpg.node_count(i); ++s) {
            robot_of[g.id(i, s)] = i;
        }
    }
    int processed = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        ++processed;
        for (int v : g.out[u]) {
            const int w = (robot_of[v] == robot_of[u] && v == u + 1) ? 1 : 0;
            start[v] = std::max(start[v], start[u] + w);
            if (--indeg[v] == 0) {
                queue.push_back(v);
            }
        }
    }
    if (processed != g.total) {
        throw std::runtime_error("tpg: precedence graph is cyclic");
    }
    return start;
}

}  // namespace

Tpg build_tpg(const SyncTrajectory &traj, const Scene &scene) {
    Tpg tpg;
    tpg.scene_name = traj.scene_name;
    tpg.dt = traj.dt;
    tpg.nodes = traj.states;
    const int n_robots = tpg.num_robots();
    for (int i = 0; i < n_robots; ++i) {
        for (int j = i + 1; j < n_robots; ++j) {
            const int hi = tpg.node_count(i);
            const int hj = tpg.node_count(j);
            for (int m = 0; m < hi; ++m) {
                for (int n = 0; n < hj; ++n) {
                    if (!robots_collide(scene, i, tpg.nodes[i][m], j, tpg.nodes[j][n])) {
                        continue;
                    }
                    if (m == n) {
                        throw std::runtime_error(
                            "build_tpg: robots collide at the same timestep; input is invalid");
                    }
                    if (m < n) {
                        tpg.type2_edges.push_back({i, m + 1, j, n});
                    } else {
                        tpg.type2_edges.push_back({j, n + 1, i, m});
                    }
                }
            }
        }
    }
    if (!is_acyclic(tpg)) {
        throw std::runtime_error("build_tpg: precedence graph is cyclic");
    }
    return tpg;
}

bool is_acyclic(const Tpg &tpg) {
    const FlatGraph g = make_graph(tpg);
    try {
        earliest_starts(tpg, g);
    } catch (const std::runtime_error &) {
        return false;
    }
    return true;
}

std::set<NodeRef> ancestors(const Tpg &tpg, int robot, int step) {
    const FlatGraph g = make_graph(tpg);
    return mask_to_set(tpg, g, reachable(g, g.id(robot, step), false));
}

std::set<NodeRef> descendants(const Tpg &tpg, int robot, int step) {
    const FlatGraph g = make_graph(tpg);
    return mask_to_set(tpg, g, reachable(g, g.id(robot, step), true));
}

SyncTrajectory tpg_schedule(const Tpg &tpg) {
    const FlatGraph g = make_graph(tpg);
    const std::vector<int> start = earliest_starts(tpg, g);
    const int n_robots = tpg.num_robots();

    int horizon = 1;
    for (int v = 0; v < g.total; ++v) {
        horizon = std::max(horizon, start[v] + 1);
    }

    SyncTrajectory out;
    out.scene_name = tpg.scene_name;
    out.dt = tpg.dt;
    out.states.resize(n_robots);
    for (int i = 0; i < n_robots; ++i) {
        out.states[i].reserve(horizon);
        int pos = 0;
        for (int s = 0; s < horizon; ++s) {
            while (pos + 1 < tpg.node_count(i) && start[g.id(i, pos + 1)] <= s) {
                ++pos;
            }
            out.states[i].push_back(tpg.nodes[i][pos]);
        }
    }
    return out;
}

ShortcutOutcome attempt_tpg_shortcut(Tpg &tpg, int robot, int m, int n, const Scene &scene) {
    ShortcutOutcome out;
    const int count = tpg.node_count(robot);
    if (m < 0 || n >= count || n < m + 2) {
        throw std::invalid_argument("attempt_tpg_shortcut: span must satisfy 0 <= m, m+2 <= n < node count");
    }
    const int span = n - m;
    const double v_max = scene.robots[robot].v_max;
    const int steps = segment_step_count(l1_dist(tpg.nodes[robot][m], tpg.nodes[robot][n]), tpg.dt, v_max);
    out.objective_before = span;
    out.objective_after = steps;
    if (steps >= span) {
        out.reject_reason = RejectReason::NotShorter;
        return out;
    }

    const FlatGraph g = make_graph(tpg);
    const std::vector<char> anc = reachable(g, g.id(robot, m), false);
    const std::vector<char> desc = reachable(g, g.id(robot, n), true);

    // Collision check every interpolated config against all non-exempt
    // nodes of the other robots; collisions with exempt nodes become the
    // rebuilt precedence edges.
    std::vector<Config> interior(steps - 1);
    std::vector<TpgEdge> pending;
    for (int k = 1; k < steps; ++k) {
        Config cfg = interpolate(tpg.nodes[robot][m], tpg.nodes[robot][n], static_cast<double>(k) / steps);
        ++out.checks_performed;
        if (robot_hits_obstacle(scene, robot, cfg) || !within_limits(scene.robots[robot], cfg)) {
            out.reject_reason = RejectReason::Collision;
            return out;
        }
        const int new_pos = m + k;
        for (int j = 0; j < tpg.num_robots(); ++j) {
            if (j == robot) {
                continue;
            }
            for (int q = 0; q < tpg.node_count(j); ++q) {
                const int qid = g.id(j, q);
                const bool exempt_desc = desc[qid];
                const bool exempt_anc = anc[qid];
                ++out.checks_performed;
                if (!robots_collide(scene, robot, cfg, j, tpg.nodes[j][q])) {
                    continue;
                }
                if (exempt_desc) {
                    pending.push_back({robot, new_pos + 1, j, q});
                } else if (exempt_anc) {
                    if (q + 1 >= tpg.node_count(j)) {
                        // The other robot parks at this node forever; no
                        // precedence edge can clear the conflict.
                        out.reject_reason = RejectReason::Collision;
                        return out;
                    }
                    pending.push_back({j, q + 1, robot, new_pos});
                } else {
                    out.reject_reason = RejectReason::Collision;
                    return out;
                }
            }
        }
        interior[k - 1] = std::move(cfg);
    }

    const Tpg backup = tpg;
    const SyncTrajectory sched_before = tpg_schedule(tpg);
    const double mk_before = makespan(sched_before);

    // Splice robot i's node list.
    const int delta = span - steps;
    {
        std::vector<Config> seq;
        seq.reserve(count - delta);
        seq.insert(seq.end(), tpg.nodes[robot].begin(), tpg.nodes[robot].begin() + m + 1);
        for (auto &cfg : interior) {
            seq.push_back(std::move(cfg));
        }
        seq.insert(seq.end(), tpg.nodes[robot].begin() + n, tpg.nodes[robot].end());
        tpg.nodes[robot] = std::move(seq);
    }

    // Re-anchor surviving edges. An edge source (i, s) encodes "robot i has
    // left config s-1", so it survives iff config s-1 survives; a target
    // (i, s) references config s directly.
    std::vector<TpgEdge> edges;
    edges.reserve(tpg.type2_edges.size() + pending.size());
    for (TpgEdge e : tpg.type2_edges) {
        bool keep = true;
        if (e.from_robot == robot) {
            if (e.from_step - 1 <= m) {
                // unchanged
            } else if (e.from_step - 1 >= n) {
                e.from_step -= delta;
            } else {
                keep = false;
            }
        }
        if (keep && e.to_robot == robot) {
            if (e.to_step <= m) {
                // unchanged
            } else if (e.to_step >= n) {
                e.to_step -= delta;
            } else {
                keep = false;
            }
        }
        if (keep) {
            edges.push_back(e);
        }
    }
    edges.insert(edges.end(), pending.begin(), pending.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    tpg.type2_edges = std::move(edges);

    if (!is_acyclic(tpg)) {
        tpg = backup;
        out.reject_reason = RejectReason::Collision;
        return out;
    }
    const SyncTrajectory sched_after = tpg_schedule(tpg);
    if (!validate(sched_after, scene).empty()) {
        tpg = backup;
        out.reject_reason = RejectReason::Collision;
        return out;
    }
    if (makespan(sched_after) > mk_before + 1e-12) {
        tpg = backup;
        out.reject_reason = RejectReason::NotShorter;
        return out;
    }
    out.accepted = true;
    return out;
}

bool verify_edge_coverage(const Tpg &tpg, const Scene &scene) {
    if (!is_acyclic(tpg)) {
        return false;
    }
    const FlatGraph g = make_graph(tpg);
    std::vector<std::vector<char>> reach(g.total);
    for (int u = 0; u < g.total; ++u) {
        reach[u] = reachable(g, u, true);
    }
    for (int i = 0; i < tpg.num_robots(); ++i) {
        for (int j = i + 1; j < tpg.num_robots(); ++j) {
            for (int m = 0; m < tpg.node_count(i); ++m) {
                for (int n = 0; n < tpg.node_count(j); ++n) {
                    if (!robots_collide(scene, i, tpg.nodes[i][m], j, tpg.nodes[j][n])) {
                        continue;
                    }
                    const bool i_first = m + 1 < tpg.node_count(i) &&
                                         reach[g.id(i, m + 1)][g.id(j, n)];
                    const bool j_first = n + 1 < tpg.node_count(j) &&
                                         reach[g.id(j, n + 1)][g.id(i, m)];
                    if (!i_first && !j_first) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

std::string tpg_to_dot(const Tpg &tpg) {
    std::ostringstream os;
    os << "digraph tpg {\n  rankdir=LR;\n";
    for (int i = 0; i < tpg.num_robots(); ++i) {
        for (int s = 0; s + 1 < tpg.node_count(i); ++s) {
            os << "  r" << i << "_" << s << " -> r" << i << "_" << (s + 1) << ";\n";
        }
    }
    for (const TpgEdge &e : tpg.type2_edges) {
        os << "  r" << e.from_robot << "_" << e.from_step << " -> r" << e.to_robot << "_"
           << e.to_step << " [style=dashed, color=red];\n";
    }
    os << "}\n";
    return os.str();
}

LoopResult run_tpg_loop(const SyncTrajectory &traj, const Scene &scene, const LoopOptions &opts) {
    LoopResult res;
    res.trajectory = traj;
    if (!opts.budget.positive()) {
        return res;
    }
    detail::LoopClock clock(!opts.budget.exhausted_by_time());
    std::mt19937_64 rng(opts.seed);

    res.log.push_back({0.0, makespan(traj), path_length(traj), 0, 0});
    double last_log = 0.0;
    constexpr double kHeartbeat = 0.1;

    Tpg tpg = build_tpg(traj, scene);
    SyncTrajectory sched = tpg_schedule(tpg);
    double mk = makespan(sched);
    double pl = path_length(sched);
    res.log.push_back({clock.elapsed(), mk, pl, 0, 0});

    std::vector<EndpointStrategy> strategies(tpg.num_robots());
    for (auto &s : strategies) {
        s.kind = opts.endpoint;
    }
    int robot_cursor = 0;

    while (true) {
        if (opts.budget.iterations >= 0) {
            if (res.candidates >= opts.budget.iterations) {
                break;
            }
        } else if (clock.elapsed() >= opts.budget.seconds) {
            break;
        }
        std::vector<int> eligible;
        for (int i = 0; i < tpg.num_robots(); ++i) {
            if (tpg.node_count(i) >= 3) {
                eligible.push_back(i);
            }
        }
        if (eligible.empty()) {
            break;
        }
        int robot = 0;
        if (opts.robot_select == RobotSelect::Random) {
            std::uniform_int_distribution<int> dist(0, static_cast<int>(eligible.size()) - 1);
            robot = eligible[dist(rng)];
        } else {
            robot = eligible[robot_cursor % eligible.size()];
            robot_cursor = (robot_cursor + 1) % static_cast<int>(eligible.size());
        }
        const auto pair = next_endpoint_pair(strategies[robot], tpg.node_count(robot), rng);
        if (!pair) {
            break;
        }
        ++res.candidates;
        ++res.sampled_by_method[static_cast<int>(Method::Tpg)];

        const auto t0 = std::chrono::steady_clock::now();
        ShortcutOutcome out = attempt_tpg_shortcut(tpg, robot, pair->first, pair->second, scene);
        if (out.accepted) {
            sched = tpg_schedule(tpg);
            const double pl_new = path_length(sched);
            out.rel_length_reduction = pl > kZeroVecNorm ? std::max(0.0, (pl - pl_new) / pl) : 0.0;
            pl = pl_new;
            mk = makespan(sched);
            ++res.valid;
            ++res.valid_by_method[static_cast<int>(Method::Tpg)];
            res.accepts.push_back({Method::Tpg, out.objective_before, out.objective_after});
            for (auto &s : strategies) {
                s.reset();
            }
        }
        out.makespan_after = mk;
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.time_spent = clock.charge_attempt(out.checks_performed, wall);
        res.checks += out.checks_performed;

        const double now = clock.elapsed();
        if (out.accepted || (!clock.virtual_mode() && now - last_log >= kHeartbeat)) {
            res.log.push_back({now, mk, pl, res.candidates, res.valid});
            last_log = now;
        }
    }

    res.runtime_s = clock.elapsed();
    res.log.push_back({res.runtime_s, mk, pl, res.candidates, res.valid});
    res.trajectory = std::move(sched);
    return res;
}

}  // namespace mrpost
