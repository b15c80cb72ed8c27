#include <doctest.h>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "mrpost/planner.hpp"
#include "mrpost/shortcut.hpp"

using namespace mrpost;

namespace {

// Exhaustive enumeration of path-shortcut sequences up to `depth`,
// applying the same accept semantics as the loop (retime + resample after
// every acceptance), returning the best reachable makespan.
double best_path_makespan(const SyncTrajectory &traj, const Scene &scene, int depth) {
    double best = makespan(traj);
    if (depth == 0) {
        return best;
    }
    const int h = traj.horizon();
    for (int robot = 0; robot < traj.num_robots(); ++robot) {
        for (int m = 0; m + 2 < h; ++m) {
            for (int n = m + 2; n < h; ++n) {
                SyncTrajectory copy = traj;
                const ShortcutOutcome out = attempt_path(copy, robot, m, n, scene);
                if (!out.accepted) {
                    continue;
                }
                SyncTrajectory retimed = resample_uniform(retime(copy, scene), scene, copy.dt);
                if (!validate(retimed, scene).empty()) {
                    continue;
                }
                best = std::min(best, best_path_makespan(retimed, scene, depth - 1));
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("next_candidate: H=3 forces the only pair") {
    EndpointStrategy st;
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        const auto cand = next_candidate(st, 3, RobotSelect::Random, 2, Method::Composite, rng);
        REQUIRE(cand.has_value());
        CHECK(cand->m == 0);
        CHECK(cand->n == 2);
        CHECK(cand->robot == -1);
    }
    CHECK_FALSE(next_candidate(st, 2, RobotSelect::Random, 2, Method::Composite, rng).has_value());
}

TEST_CASE("randomized candidates are reproducible for a fixed seed") {
    EndpointStrategy a, b;
    std::mt19937_64 rng_a(42), rng_b(42);
    for (int i = 0; i < 100; ++i) {
        const auto ca = next_candidate(a, 20, RobotSelect::Random, 3, Method::Path, rng_a);
        const auto cb = next_candidate(b, 20, RobotSelect::Random, 3, Method::Path, rng_b);
        REQUIRE(ca.has_value());
        CHECK(ca->m == cb->m);
        CHECK(ca->n == cb->n);
        CHECK(ca->robot == cb->robot);
    }
}

TEST_CASE("randomized pairs are uniform over the 36 pairs at H=10") {
    EndpointStrategy st;
    std::mt19937_64 rng(2024);
    std::map<std::pair<int, int>, long> counts;
    const long draws = 100000;
    for (long i = 0; i < draws; ++i) {
        const auto pair = next_endpoint_pair(st, 10, rng);
        REQUIRE(pair.has_value());
        CHECK(pair->second >= pair->first + 2);
        ++counts[*pair];
    }
    CHECK(counts.size() == 36);
    const double expected = draws / 36.0;
    for (const auto &[pair, count] : counts) {
        CHECK(count > expected * 0.85);
        CHECK(count < expected * 1.15);
    }
}

TEST_CASE("forward loop sweeps pairs in order and wraps") {
    EndpointStrategy st;
    st.kind = EndpointKind::ForwardLoop;
    std::mt19937_64 rng(0);
    std::vector<std::pair<int, int>> seen;
    for (int i = 0; i < 7; ++i) {
        seen.push_back(*next_endpoint_pair(st, 5, rng));
    }
    const std::vector<std::pair<int, int>> expected = {{0, 2}, {0, 3}, {0, 4}, {1, 3},
                                                       {1, 4}, {2, 4}, {0, 2}};
    CHECK(seen == expected);
}

TEST_CASE("backward loop decrements n from the horizon end") {
    EndpointStrategy st;
    st.kind = EndpointKind::BackwardLoop;
    std::mt19937_64 rng(0);
    std::vector<std::pair<int, int>> seen;
    for (int i = 0; i < 7; ++i) {
        seen.push_back(*next_endpoint_pair(st, 5, rng));
    }
    const std::vector<std::pair<int, int>> expected = {{0, 4}, {0, 3}, {0, 2}, {1, 4},
                                                       {1, 3}, {2, 4}, {0, 4}};
    CHECK(seen == expected);
}

TEST_CASE("round-robin robot selection cycles") {
    EndpointStrategy st;
    std::mt19937_64 rng(3);
    std::vector<int> robots;
    for (int i = 0; i < 6; ++i) {
        robots.push_back(
            next_candidate(st, 10, RobotSelect::RoundRobin, 3, Method::Path, rng)->robot);
    }
    CHECK(robots == std::vector<int>{0, 1, 2, 0, 1, 2});
}

TEST_CASE("composite removes an all-wait span with K=1") {
    auto fix = fixtures::make_fig2a();
    // freeze everyone for steps 5..9
    for (auto &seq : fix.traj.states) {
        for (int r = 0; r < 4; ++r) {
            seq.insert(seq.begin() + 5, seq[5]);
        }
    }
    REQUIRE(validate(fix.traj, fix.scene).empty());
    const int h_before = fix.traj.horizon();
    const ShortcutOutcome out = attempt_composite(fix.traj, 4, 9, fix.scene);
    CHECK(out.accepted);
    CHECK(out.objective_after == 1.0);
    CHECK(fix.traj.horizon() == h_before - 4);
    CHECK(validate(fix.traj, fix.scene).empty());
}

TEST_CASE("fig2a: composite accepts exactly the corner-spanning candidates") {
    const auto fix = fixtures::make_fig2a();
    REQUIRE(validate(fix.traj, fix.scene).empty());

    for (int m = 0; m <= 18; m += 3) {
        for (int n = m + 2; n <= 20; n += 2) {
            auto traj = fix.traj;
            const ShortcutOutcome out = attempt_composite(traj, m, n, fix.scene);
            const bool spans_corner = m < 10 && n > 10;
            CHECK(out.accepted == spans_corner);
            if (!out.accepted) {
                CHECK(out.reject_reason == RejectReason::NotShorter);
                CHECK(traj.states == fix.traj.states);  // rejection leaves it untouched
            } else {
                CHECK(validate(traj, fix.scene).empty());
            }
        }
    }

    auto traj = fix.traj;
    const ShortcutOutcome out = attempt_composite(traj, 0, 20, fix.scene);
    CHECK(out.accepted);
    CHECK(traj.horizon() == 11);  // 10 max-speed steps for the straight lines
    // composite fairness: every robot shortened by the same amount
    for (const auto &seq : traj.states) {
        CHECK(static_cast<int>(seq.size()) == 11);
    }
}

TEST_CASE("fig2b: only the prioritized candidate is accepted") {
    const auto fix = fixtures::make_fig2b();
    REQUIRE(validate(fix.traj, fix.scene).empty());

    SUBCASE("composite is rejected as not shorter") {
        auto traj = fix.traj;
        const ShortcutOutcome out = attempt_composite(traj, fix.m, fix.n, fix.scene);
        CHECK_FALSE(out.accepted);
        CHECK(out.reject_reason == RejectReason::NotShorter);
    }
    SUBCASE("path is rejected by the crossing collision") {
        auto traj = fix.traj;
        const ShortcutOutcome out = attempt_path(traj, fix.robot, fix.m, fix.n, fix.scene);
        CHECK_FALSE(out.accepted);
        CHECK(out.reject_reason == RejectReason::Collision);
        CHECK(traj.states == fix.traj.states);
    }
    SUBCASE("prioritized passes the crossing before robot 1 arrives") {
        auto traj = fix.traj;
        const ShortcutOutcome out = attempt_prioritized(traj, fix.robot, fix.m, fix.n, fix.scene);
        CHECK(out.accepted);
        CHECK(out.objective_after == 6.0);
        CHECK(traj.horizon() == fix.traj.horizon());  // grid restored by goal waits
        CHECK(traj.states[0].back() == fix.traj.states[0].back());
        CHECK(validate(traj, fix.scene).empty());
    }
}

TEST_CASE("fig2c: only the path candidate is accepted") {
    const auto fix = fixtures::make_fig2c();
    REQUIRE(validate(fix.traj, fix.scene).empty());

    SUBCASE("composite chord drives robot 1 into the obstacle") {
        auto traj = fix.traj;
        const ShortcutOutcome out = attempt_composite(traj, fix.m, fix.n, fix.scene);
        CHECK_FALSE(out.accepted);
        CHECK(out.reject_reason == RejectReason::Collision);
    }
    SUBCASE("prioritized arrives at the crossing too early") {
        auto traj = fix.traj;
        const ShortcutOutcome out = attempt_prioritized(traj, fix.robot, fix.m, fix.n, fix.scene);
        CHECK_FALSE(out.accepted);
        CHECK(out.reject_reason == RejectReason::Collision);
    }
    SUBCASE("path keeps the timing and slips behind robot 1") {
        auto traj = fix.traj;
        const ShortcutOutcome out = attempt_path(traj, fix.robot, fix.m, fix.n, fix.scene);
        CHECK(out.accepted);
        CHECK(validate(traj, fix.scene).empty());
        // retiming then realizes a makespan gain
        const SyncTrajectory retimed = resample_uniform(retime(traj, fix.scene), fix.scene, traj.dt);
        CHECK(validate(retimed, fix.scene).empty());
        CHECK(makespan(retimed) < makespan(fix.traj) - 1e-9);
        CHECK(retimed.states[0].back() == fix.traj.states[0].back());
    }
}

TEST_CASE("path shortcut of an already straight segment is rejected") {
    auto fix = fixtures::make_fig2b();
    // robot 1 moves on a straight max-speed line
    const ShortcutOutcome out = attempt_path(fix.traj, 1, 2, 9, fix.scene);
    CHECK_FALSE(out.accepted);
    CHECK(out.reject_reason == RejectReason::NotShorter);
}

TEST_CASE("prioritized with a single robot reduces to plain shortcutting") {
    auto fix = fixtures::make_overshoot_single();
    REQUIRE(validate(fix.traj, fix.scene).empty());
    const ShortcutOutcome out = attempt_prioritized(fix.traj, 0, 0, 12, fix.scene);
    CHECK(out.accepted);
    CHECK(out.objective_after == 8.0);  // 0.8 of L1 at v=1, dt=0.1
    CHECK(validate(fix.traj, fix.scene).empty());
    trim_goal_waits(fix.traj);
    CHECK(makespan(fix.traj) == doctest::Approx(0.8));
}

TEST_CASE("loop on an already optimal trajectory accepts nothing") {
    Scene scene;
    scene.robots.push_back(fixtures::disc());
    scene.robots.push_back(fixtures::disc());
    SyncTrajectory traj;
    traj.dt = 0.1;
    traj.states.resize(2);
    for (int k = 0; k <= 10; ++k) {
        traj.states[0].push_back({0.1 * k, 0.0});
        traj.states[1].push_back({0.1 * k, 1.0});
    }
    for (const Method method : {Method::Composite, Method::Prioritized, Method::Path, Method::Tpg}) {
        LoopOptions opts;
        opts.method = method;
        opts.budget.iterations = 300;
        opts.seed = 9;
        const LoopResult res = run_shortcut_loop(traj, scene, opts);
        CHECK(res.valid == 0);
        CHECK(makespan(res.trajectory) == doctest::Approx(1.0));
        CHECK(res.candidates == 300);
    }
}

TEST_CASE("overshoot detour converges to the straight line under every method") {
    const auto fix = fixtures::make_overshoot_single();
    for (const Method method : {Method::Composite, Method::Prioritized, Method::Path, Method::Tpg}) {
        LoopOptions opts;
        opts.method = method;
        opts.budget.iterations = 500;
        opts.seed = 13;
        const LoopResult res = run_shortcut_loop(fix.traj, fix.scene, opts);
        CHECK(validate(res.trajectory, fix.scene).empty());
        // analytic optimum: L1(start, goal) / v_max on the dt grid
        CHECK(makespan(res.trajectory) == doctest::Approx(0.8));
        CHECK(res.trajectory.states[0].front() == fix.traj.states[0].front());
        CHECK(res.trajectory.states[0].back() == fix.traj.states[0].back());
    }
}

TEST_CASE("budget of zero returns the input unchanged with an empty log") {
    const auto fix = fixtures::make_overshoot_single();
    LoopOptions opts;
    opts.method = Method::Path;
    opts.budget.seconds = 0.0;
    const LoopResult res = run_shortcut_loop(fix.traj, fix.scene, opts);
    CHECK(res.log.empty());
    CHECK(res.candidates == 0);
    CHECK(res.trajectory.states == fix.traj.states);
}

TEST_CASE("randomized path loop matches the depth-3 exhaustive oracle") {
    const auto fix = fixtures::make_crossing_pair();
    REQUIRE(validate(fix.traj, fix.scene).empty());

    const double oracle = best_path_makespan(fix.traj, fix.scene, 3);
    CHECK(oracle == doctest::Approx(0.8));  // robot 0's straight-line travel time

    LoopOptions opts;
    opts.method = Method::Path;
    opts.budget.iterations = 2000;
    opts.seed = 21;
    const LoopResult res = run_shortcut_loop(fix.traj, fix.scene, opts);
    CHECK(makespan(res.trajectory) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("loop invariants: monotone makespan, strict objective gains, endpoint immutability") {
    const auto fixtures_list = {fixtures::make_fig2a(), fixtures::make_fig2b(),
                                fixtures::make_fig2c(), fixtures::make_crossing_pair()};
    for (const auto &fix : fixtures_list) {
        for (const Method method :
             {Method::Composite, Method::Prioritized, Method::Path, Method::Tpg}) {
            LoopOptions opts;
            opts.method = method;
            opts.budget.iterations = 400;
            opts.seed = 31;
            const LoopResult res = run_shortcut_loop(fix.traj, fix.scene, opts);
            CHECK(validate(res.trajectory, fix.scene).empty());
            for (std::size_t k = 1; k < res.log.size(); ++k) {
                CHECK(res.log[k].wall >= res.log[k - 1].wall);
                CHECK(res.log[k].makespan <= res.log[k - 1].makespan + 1e-12);
            }
            for (const auto &acc : res.accepts) {
                CHECK(acc.objective_after < acc.objective_before);
            }
            for (int i = 0; i < fix.traj.num_robots(); ++i) {
                CHECK(res.trajectory.states[i].front() == fix.traj.states[i].front());
                CHECK(res.trajectory.states[i].back() == fix.traj.states[i].back());
            }
        }
    }
}

TEST_CASE("every accepted shortcut leaves a validate-clean trajectory (mass property)") {
    // Drives raw attempts over planner outputs on randomized crossing
    // scenes and validates after every single acceptance.
    std::mt19937_64 rng(2025);
    std::uniform_real_distribution<double> angle(0.3, 2.8);
    long accepts = 0;
    long trajectories = 0;
    while (accepts < 10000 && trajectories < 2000) {
        Scenario sc;
        sc.name = "mass";
        sc.scene.robots.push_back(fixtures::disc(0.1, 1.0, 2.0));
        sc.scene.robots.push_back(fixtures::disc(0.1, 1.0, 2.0));
        const double th = angle(rng);
        sc.starts = {{-0.8, 0.0}, {-0.8 * std::cos(th), -0.8 * std::sin(th)}};
        sc.goals = {{0.8, 0.0}, {0.8 * std::cos(th), 0.8 * std::sin(th)}};
        const auto planned = plan_rrt_connect(sc, rng());
        if (!planned) {
            continue;
        }
        ++trajectories;
        SyncTrajectory traj = *planned;
        EndpointStrategy strategy;
        std::uniform_int_distribution<int> pick_method(0, 2);
        std::uniform_int_distribution<int> pick_robot(0, 1);
        for (int iter = 0; iter < 400 && traj.horizon() >= 3; ++iter) {
            const auto pair = next_endpoint_pair(strategy, traj.horizon(), rng);
            if (!pair) {
                break;
            }
            const int robot = pick_robot(rng);
            ShortcutOutcome out;
            std::vector<Config> backup;
            const int method = pick_method(rng);
            switch (method) {
                case 0:
                    out = attempt_composite(traj, pair->first, pair->second, sc.scene);
                    break;
                case 1:
                    out = attempt_prioritized(traj, robot, pair->first, pair->second, sc.scene);
                    break;
                default:
                    backup.assign(traj.states[robot].begin() + pair->first,
                                  traj.states[robot].begin() + pair->second + 1);
                    out = attempt_path(traj, robot, pair->first, pair->second, sc.scene);
                    break;
            }
            if (!out.accepted) {
                continue;
            }
            if (method == 2) {
                SyncTrajectory retimed = resample_uniform(retime(traj, sc.scene), sc.scene, traj.dt);
                if (!validate(retimed, sc.scene).empty()) {
                    std::copy(backup.begin(), backup.end(),
                              traj.states[robot].begin() + pair->first);
                    continue;  // rolled back; not an accepted shortcut
                }
                traj = std::move(retimed);
            }
            trim_goal_waits(traj);
            ++accepts;
            REQUIRE(validate(traj, sc.scene).empty());
        }
    }
    CHECK(accepts >= 10000);
}

TEST_CASE("iteration-budget loops are deterministic") {
    const auto fix = fixtures::make_crossing_pair();
    LoopOptions opts;
    opts.method = Method::Path;
    opts.budget.iterations = 500;
    opts.seed = 77;
    const LoopResult a = run_shortcut_loop(fix.traj, fix.scene, opts);
    const LoopResult b = run_shortcut_loop(fix.traj, fix.scene, opts);
    CHECK(a.trajectory.states == b.trajectory.states);
    CHECK(a.candidates == b.candidates);
    CHECK(a.valid == b.valid);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t k = 0; k < a.log.size(); ++k) {
        CHECK(a.log[k].makespan == b.log[k].makespan);
        CHECK(a.log[k].wall == b.log[k].wall);  // virtual clock is deterministic
    }
}
