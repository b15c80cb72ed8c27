#include "mrpost/shortcut.hpp"

#include <chrono>
#include <stdexcept>

#include "loop_clock.hpp"
#include "mrpost/tpg.hpp"

namespace mrpost {

const char *method_name(Method m) {
    switch (m) {
        case Method::Composite: return "composite";
        case Method::Prioritized: return "prioritized";
        case Method::Path: return "path";
        case Method::Tpg: return "tpg";
    }
    return "?";
}

std::optional<std::pair<int, int>> next_endpoint_pair(EndpointStrategy &st, int h, std::mt19937_64 &rng) {
    if (h < 3) {
        return std::nullopt;
    }
    switch (st.kind) {
        case EndpointKind::Randomized: {
            // Uniform over all admissible pairs {(m,n): m+2 <= n <= h-1}.
            const long total = static_cast<long>(h - 1) * (h - 2) / 2;
            std::uniform_int_distribution<long> dist(0, total - 1);
            long idx = dist(rng);
            int m = 0;
            long row = h - 2;  // pairs sharing this m
            while (idx >= row) {
                idx -= row;
                ++m;
                --row;
            }
            return std::make_pair(m, m + 2 + static_cast<int>(idx));
        }
        case EndpointKind::ForwardLoop: {
            if (st.m < 0 || st.m > h - 3) {
                st.m = 0;
                st.n = -1;
            }
            if (st.n < st.m + 2 || st.n > h - 1) {
                st.n = st.m + 2;
            }
            const auto pair = std::make_pair(st.m, st.n);
            ++st.n;
            if (st.n > h - 1) {
                ++st.m;
                st.n = st.m + 2;
                if (st.m > h - 3) {
                    st.m = 0;
                    st.n = 2;
                }
            }
            return pair;
        }
        case EndpointKind::BackwardLoop: {
            if (st.m < 0 || st.m > h - 3) {
                st.m = 0;
                st.n = -1;
            }
            if (st.n < st.m + 2 || st.n > h - 1) {
                st.n = h - 1;
            }
            const auto pair = std::make_pair(st.m, st.n);
            --st.n;
            if (st.n < st.m + 2) {
                ++st.m;
                if (st.m > h - 3) {
                    st.m = 0;
                }
                st.n = h - 1;
            }
            return pair;
        }
    }
    return std::nullopt;
}

std::optional<ShortcutCandidate> next_candidate(EndpointStrategy &strategy, int horizon,
                                                RobotSelect robot_select, int num_robots,
                                                Method method, std::mt19937_64 &rng) {
    const auto pair = next_endpoint_pair(strategy, horizon, rng);
    if (!pair) {
        return std::nullopt;
    }
    ShortcutCandidate cand;
    cand.method = method;
    cand.m = pair->first;
    cand.n = pair->second;
    if (method != Method::Composite) {
        if (robot_select == RobotSelect::Random) {
            std::uniform_int_distribution<int> dist(0, num_robots - 1);
            cand.robot = dist(rng);
        } else {
            cand.robot = strategy.robot_cursor % num_robots;
            strategy.robot_cursor = (strategy.robot_cursor + 1) % num_robots;
        }
    }
    return cand;
}

namespace {

void check_span(const SyncTrajectory &traj, int m, int n) {
    if (m < 0 || n > traj.horizon() - 1 || n < m + 2) {
        throw std::invalid_argument("shortcut span must satisfy 0 <= m, m+2 <= n <= H-1");
    }
}

long composite_check_cost(int num_robots) {
    return num_robots + static_cast<long>(num_robots) * (num_robots - 1) / 2;
}

}  // namespace

ShortcutOutcome attempt_composite(SyncTrajectory &traj, int m, int n, const Scene &scene) {
    check_span(traj, m, n);
    ShortcutOutcome out;
    const int n_robots = traj.num_robots();
    const int span = n - m;

    int steps = 1;
    for (int i = 0; i < n_robots; ++i) {
        const double len = l1_dist(traj.states[i][m], traj.states[i][n]);
        steps = std::max(steps, segment_step_count(len, traj.dt, scene.robots[i].v_max));
    }
    out.objective_before = span;
    out.objective_after = steps;
    if (steps >= span) {
        out.reject_reason = RejectReason::NotShorter;
        return out;
    }

    std::vector<std::vector<Config>> interior(steps - 1);
    std::vector<Config> column(n_robots);
    for (int k = 1; k < steps; ++k) {
        const double s = static_cast<double>(k) / steps;
        for (int i = 0; i < n_robots; ++i) {
            column[i] = interpolate(traj.states[i][m], traj.states[i][n], s);
        }
        out.checks_performed += composite_check_cost(n_robots);
        if (!composite_config_valid(scene, column)) {
            out.reject_reason = RejectReason::Collision;
            return out;
        }
        interior[k - 1] = column;
    }

    for (int i = 0; i < n_robots; ++i) {
        std::vector<Config> seq;
        seq.reserve(traj.horizon() - span + steps);
        seq.insert(seq.end(), traj.states[i].begin(), traj.states[i].begin() + m + 1);
        for (int k = 1; k < steps; ++k) {
            seq.push_back(std::move(interior[k - 1][i]));
        }
        seq.insert(seq.end(), traj.states[i].begin() + n, traj.states[i].end());
        traj.states[i] = std::move(seq);
    }
    out.accepted = true;
    return out;
}

ShortcutOutcome attempt_prioritized(SyncTrajectory &traj, int robot, int m, int n, const Scene &scene) {
    check_span(traj, m, n);
    ShortcutOutcome out;
    const int h = traj.horizon();
    const int n_robots = traj.num_robots();
    const auto &seq = traj.states[robot];

    // When the span ends inside a wait run, the robot already reached C_n
    // earlier; measure the shortcut against its true arrival step so that
    // trailing waits never count as savings.
    while (n > m && seq[n] == seq[n - 1]) {
        --n;
    }
    const int span = n - m;
    if (span < 2) {
        out.objective_before = span;
        out.objective_after = span;
        out.reject_reason = RejectReason::NotShorter;
        return out;
    }

    const int steps = segment_step_count(l1_dist(seq[m], seq[n]), traj.dt, scene.robots[robot].v_max);
    out.objective_before = span;
    out.objective_after = steps;
    if (steps >= span) {
        out.reject_reason = RejectReason::NotShorter;
        return out;
    }

    // Candidate sequence: shortcut at max speed, suffix shifted earlier,
    // goal wait-padding restoring the shared grid.
    std::vector<Config> cand;
    cand.reserve(h);
    cand.insert(cand.end(), seq.begin(), seq.begin() + m + 1);
    for (int k = 1; k < steps; ++k) {
        cand.push_back(interpolate(seq[m], seq[n], static_cast<double>(k) / steps));
    }
    cand.insert(cand.end(), seq.begin() + n, seq.end());
    while (static_cast<int>(cand.size()) < h) {
        cand.push_back(seq.back());
    }
    if (cand == seq) {
        // span ended inside a wait tail; nothing actually got faster
        out.reject_reason = RejectReason::NotShorter;
        return out;
    }

    for (int k = 1; k < steps; ++k) {
        ++out.checks_performed;
        if (robot_hits_obstacle(scene, robot, cand[m + k]) ||
            !within_limits(scene.robots[robot], cand[m + k])) {
            out.reject_reason = RejectReason::Collision;
            return out;
        }
    }
    for (int s = m + 1; s < h; ++s) {
        for (int j = 0; j < n_robots; ++j) {
            if (j == robot) {
                continue;
            }
            ++out.checks_performed;
            if (robots_collide(scene, robot, cand[s], j, traj.states[j][s])) {
                out.reject_reason = RejectReason::Collision;
                return out;
            }
        }
    }

    traj.states[robot] = std::move(cand);
    out.accepted = true;
    return out;
}

ShortcutOutcome attempt_path(SyncTrajectory &traj, int robot, int m, int n, const Scene &scene) {
    check_span(traj, m, n);
    ShortcutOutcome out;
    const int n_robots = traj.num_robots();
    const int span = n - m;
    const auto &seq = traj.states[robot];

    double old_len = 0.0;
    for (int s = m; s < n; ++s) {
        old_len += l1_dist(seq[s], seq[s + 1]);
    }
    const double chord = l1_dist(seq[m], seq[n]);
    out.objective_before = old_len;
    out.objective_after = chord;
    if (chord + kLengthTol >= old_len) {
        out.reject_reason = RejectReason::NotShorter;
        return out;
    }

    std::vector<Config> replacement(span - 1);
    for (int k = 1; k < span; ++k) {
        Config cfg = interpolate(seq[m], seq[n], static_cast<double>(k) / span);
        ++out.checks_performed;
        if (robot_hits_obstacle(scene, robot, cfg) || !within_limits(scene.robots[robot], cfg)) {
            out.reject_reason = RejectReason::Collision;
            return out;
        }
        for (int j = 0; j < n_robots; ++j) {
            if (j == robot) {
                continue;
            }
            ++out.checks_performed;
            if (robots_collide(scene, robot, cfg, j, traj.states[j][m + k])) {
                out.reject_reason = RejectReason::Collision;
                return out;
            }
        }
        replacement[k - 1] = std::move(cfg);
    }

    for (int k = 1; k < span; ++k) {
        traj.states[robot][m + k] = std::move(replacement[k - 1]);
    }
    out.accepted = true;
    return out;
}

void trim_goal_waits(SyncTrajectory &traj) {
    while (traj.horizon() >= 2) {
        const int h = traj.horizon();
        bool all_wait = true;
        for (int i = 0; i < traj.num_robots() && all_wait; ++i) {
            all_wait = traj.states[i][h - 2] == traj.states[i][h - 1];
        }
        if (!all_wait) {
            return;
        }
        for (auto &seq : traj.states) {
            seq.pop_back();
        }
    }
}

namespace {

LoopResult run_engine(const SyncTrajectory &input, const Scene &scene, const LoopOptions &opts,
                      MethodSelector *selector) {
    LoopResult res;
    res.trajectory = input;
    if (!opts.budget.positive()) {
        return res;  // unchanged, empty log
    }
    if (!selector && opts.method == Method::Tpg) {
        return run_tpg_loop(input, scene, opts);
    }

    detail::LoopClock clock(!opts.budget.exhausted_by_time());
    std::mt19937_64 rng(opts.seed);
    SyncTrajectory traj = input;

    EndpointStrategy strategy;
    strategy.kind = selector ? EndpointKind::Randomized : opts.endpoint;

    double mk = makespan(traj);
    double pl = path_length(traj);
    res.log.push_back({0.0, mk, pl, 0, 0});
    double last_log = 0.0;
    constexpr double kHeartbeat = 0.1;

    while (true) {
        if (opts.budget.iterations >= 0) {
            if (res.candidates >= opts.budget.iterations) {
                break;
            }
        } else if (clock.elapsed() >= opts.budget.seconds) {
            break;
        }
        const int h = traj.horizon();
        if (h < 3) {
            break;
        }
        const Method method_now = selector ? selector->select(rng) : opts.method;
        const auto cand =
            next_candidate(strategy, h, opts.robot_select, traj.num_robots(), method_now, rng);
        if (!cand) {
            break;
        }
        ++res.candidates;
        ++res.sampled_by_method[static_cast<int>(method_now)];

        const auto t0 = std::chrono::steady_clock::now();
        ShortcutOutcome out;
        std::vector<Config> path_backup;
        switch (method_now) {
            case Method::Composite:
                out = attempt_composite(traj, cand->m, cand->n, scene);
                break;
            case Method::Prioritized:
                out = attempt_prioritized(traj, cand->robot, cand->m, cand->n, scene);
                break;
            case Method::Path: {
                path_backup.assign(traj.states[cand->robot].begin() + cand->m,
                                   traj.states[cand->robot].begin() + cand->n + 1);
                out = attempt_path(traj, cand->robot, cand->m, cand->n, scene);
                break;
            }
            case Method::Tpg:
                throw std::logic_error("tpg method inside trajectory engine");
        }

        if (out.accepted && method_now == Method::Path) {
            // Realize the makespan gain; the resampled grid introduces new
            // interpolated configs, so it must re-validate or be rolled back.
            SyncTrajectory retimed = resample_uniform(retime(traj, scene), scene, traj.dt);
            retimed.scene_name = traj.scene_name;
            if (validate(retimed, scene).empty()) {
                traj = std::move(retimed);
            } else {
                std::copy(path_backup.begin(), path_backup.end(),
                          traj.states[cand->robot].begin() + cand->m);
                out.accepted = false;
                out.reject_reason = RejectReason::Collision;
            }
        }

        if (out.accepted) {
            trim_goal_waits(traj);
            ++res.valid;
            ++res.valid_by_method[static_cast<int>(method_now)];
            strategy.reset();
            const double pl_new = path_length(traj);
            out.rel_length_reduction = pl > kZeroVecNorm ? std::max(0.0, (pl - pl_new) / pl) : 0.0;
            pl = pl_new;
            mk = makespan(traj);
            res.accepts.push_back({method_now, out.objective_before, out.objective_after});
        }
        out.makespan_after = mk;
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.time_spent = clock.charge_attempt(out.checks_performed, wall);
        res.checks += out.checks_performed;
        if (selector) {
            selector->observe(method_now, out);
        }

        const double now = clock.elapsed();
        if (out.accepted) {
            res.log.push_back({now, mk, pl, res.candidates, res.valid});
            last_log = now;
        } else if (!clock.virtual_mode() && now - last_log >= kHeartbeat) {
            res.log.push_back({now, mk, pl, res.candidates, res.valid});
            last_log = now;
        }
    }

    res.runtime_s = clock.elapsed();
    res.log.push_back({res.runtime_s, mk, pl, res.candidates, res.valid});
    res.trajectory = std::move(traj);
    return res;
}

}  // namespace

LoopResult run_shortcut_loop(const SyncTrajectory &traj, const Scene &scene, const LoopOptions &opts) {
    return run_engine(traj, scene, opts, nullptr);
}

LoopResult run_selector_loop(const SyncTrajectory &traj, const Scene &scene, const LoopOptions &opts,
                             MethodSelector &selector) {
    return run_engine(traj, scene, opts, &selector);
}

}  // namespace mrpost
