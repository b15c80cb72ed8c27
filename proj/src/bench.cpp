#include "mrpost/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace mrpost {

const char *bench_method_name(BenchMethod m) {
    switch (m) {
        case BenchMethod::Composite: return "composite";
        case BenchMethod::Prioritized: return "prioritized";
        case BenchMethod::Path: return "path";
        case BenchMethod::Tpg: return "tpg";
        case BenchMethod::FwdLoop: return "fwd_loop";
        case BenchMethod::BwdLoop: return "bwd_loop";
        case BenchMethod::RoundRobin: return "rr";
        case BenchMethod::Dts: return "dts";
    }
    return "?";
}

std::optional<BenchMethod> parse_bench_method(const std::string &name) {
    for (BenchMethod m : all_bench_methods()) {
        if (name == bench_method_name(m)) {
            return m;
        }
    }
    return std::nullopt;
}

std::vector<BenchMethod> all_bench_methods() {
    return {BenchMethod::Composite, BenchMethod::Prioritized, BenchMethod::Path,
            BenchMethod::Tpg,       BenchMethod::FwdLoop,     BenchMethod::BwdLoop,
            BenchMethod::RoundRobin, BenchMethod::Dts};
}

LoopResult run_bench_method(const SyncTrajectory &traj, const Scene &scene, BenchMethod method,
                            const LoopBudget &budget, std::uint64_t seed, const DtsParams &dts) {
    LoopOptions opts;
    opts.budget = budget;
    opts.seed = seed;
    switch (method) {
        case BenchMethod::Composite:
        case BenchMethod::Prioritized:
        case BenchMethod::Path:
        case BenchMethod::Tpg:
            opts.method = static_cast<Method>(method);
            opts.endpoint = EndpointKind::Randomized;
            return run_shortcut_loop(traj, scene, opts);
        case BenchMethod::FwdLoop:
        case BenchMethod::BwdLoop:
            // iterative endpoint selection generalized via path shortcutting
            opts.method = Method::Path;
            opts.endpoint = method == BenchMethod::FwdLoop ? EndpointKind::ForwardLoop
                                                           : EndpointKind::BackwardLoop;
            return run_shortcut_loop(traj, scene, opts);
        case BenchMethod::RoundRobin:
            return run_multi_strategy(traj, scene, SelectorKind::RoundRobin, budget, seed, dts).loop;
        case BenchMethod::Dts:
            return run_multi_strategy(traj, scene, SelectorKind::Dts, budget, seed, dts).loop;
    }
    throw std::logic_error("unreachable");
}

std::uint64_t mix_seeds(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

namespace {

void parallel_for(int n_tasks, int workers, const std::function<void(int)> &fn) {
    workers = std::max(1, std::min(workers, n_tasks));
    if (workers == 1) {
        for (int i = 0; i < n_tasks; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= n_tasks) {
                    return;
                }
                fn(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

double improvement_pct(double before, double after) {
    if (before <= 1e-12) {
        return 0.0;
    }
    return 100.0 * (before - after) / before;
}

std::vector<BenchRecord> run_benchmark(const BenchConfig &config) {
    const int n_scen = static_cast<int>(config.scenarios.size());
    const int n_seeds = static_cast<int>(config.seeds.size());
    const int n_methods = static_cast<int>(config.methods.size());

    // Phase 1: one input trajectory per (scenario, seed), shared by all
    // methods so the comparison is apples-to-apples.
    struct Input {
        bool ok = false;
        std::string planner;
        std::string error;
        SyncTrajectory traj;
    };
    std::vector<Input> inputs(n_scen * n_seeds);
    parallel_for(n_scen * n_seeds, config.workers, [&](int task) {
        const int si = task / n_seeds;
        const int ki = task % n_seeds;
        const Scenario &scen = config.scenarios[si];
        Input &input = inputs[task];
        try {
            const auto it = config.import_files.find(scen.name);
            if (it != config.import_files.end()) {
                input.traj = import_trajectory(it->second, scen.scene, scen.dt);
                input.traj.scene_name = scen.name;
                input.planner = "import";
            } else {
                RrtParams params;
                params.timeout_s = config.plan_timeout_s;
                auto traj = plan_rrt_connect(scen, mix_seeds(scen.seed, config.seeds[ki]), params);
                if (!traj) {
                    input.error = "planning timed out";
                    return;
                }
                input.traj = std::move(*traj);
                input.planner = "rrt";
            }
            input.ok = true;
        } catch (const std::exception &e) {
            input.error = e.what();
        }
    });

    // Phase 2: cells.
    std::vector<BenchRecord> records(n_scen * n_methods * n_seeds);
    parallel_for(static_cast<int>(records.size()), config.workers, [&](int task) {
        const int si = task / (n_methods * n_seeds);
        const int mi = (task / n_seeds) % n_methods;
        const int ki = task % n_seeds;
        const Scenario &scen = config.scenarios[si];
        const Input &input = inputs[si * n_seeds + ki];
        BenchRecord &rec = records[task];
        rec.scenario = scen.name;
        rec.method = bench_method_name(config.methods[mi]);
        rec.seed = config.seeds[ki];
        rec.robots = scen.scene.num_robots();
        rec.planner = input.planner;
        if (!input.ok) {
            rec.error = input.error;
            return;
        }
        try {
            LoopBudget budget;
            budget.iterations = config.budget_iterations;
            budget.seconds = config.budget_override_s.value_or(scen.budget_s);
            const LoopResult result = run_bench_method(input.traj, scen.scene, config.methods[mi],
                                                       budget, config.seeds[ki], config.dts);
            const auto violations = validate(result.trajectory, scen.scene);
            if (!violations.empty()) {
                rec.error = "output trajectory failed validation";
                return;
            }
            rec.before = compute_metrics(input.traj);
            rec.after = compute_metrics(result.trajectory, result.runtime_s);
            rec.candidates = result.candidates;
            rec.valid = result.valid;
            rec.anytime = result.log;
            rec.ok = true;
        } catch (const std::exception &e) {
            rec.error = e.what();
        }
    });
    return records;
}

std::string records_to_csv(const std::vector<BenchRecord> &records) {
    std::ostringstream os;
    os << "scenario,planner,method,seed,robots,status,mk_before,mk_after,pl_before,pl_after,"
          "dc_before,dc_after,candidates,valid,mk_improve_pct,pl_improve_pct,dc_improve_pct,"
          "mk_improve_per_valid_s,runtime_s\n";
    for (const auto &r : records) {
        const double per_valid = r.valid > 0 ? (r.before.makespan - r.after.makespan) / r.valid : 0.0;
        os << r.scenario << ',' << r.planner << ',' << r.method << ',' << r.seed << ',' << r.robots
           << ',' << (r.ok ? "ok" : "failed") << ',' << fmt(r.before.makespan) << ','
           << fmt(r.after.makespan) << ',' << fmt(r.before.path_length) << ','
           << fmt(r.after.path_length) << ',' << fmt(r.before.directional_consistency) << ','
           << fmt(r.after.directional_consistency) << ',' << r.candidates << ',' << r.valid << ','
           << fmt(improvement_pct(r.before.makespan, r.after.makespan)) << ','
           << fmt(improvement_pct(r.before.path_length, r.after.path_length)) << ','
           << fmt(improvement_pct(r.before.directional_consistency, r.after.directional_consistency))
           << ',' << fmt(per_valid) << ',' << fmt(r.after.runtime) << '\n';
    }
    return os.str();
}

std::string summary_to_csv(const std::vector<BenchRecord> &records) {
    struct Acc {
        std::vector<double> mk, pl, dc, cand, valid, per_valid;
    };
    std::map<std::string, Acc> by_method;
    std::vector<std::string> order;
    for (const auto &r : records) {
        if (!r.ok) {
            continue;
        }
        if (!by_method.count(r.method)) {
            order.push_back(r.method);
        }
        Acc &acc = by_method[r.method];
        acc.mk.push_back(improvement_pct(r.before.makespan, r.after.makespan));
        acc.pl.push_back(improvement_pct(r.before.path_length, r.after.path_length));
        acc.dc.push_back(improvement_pct(r.before.directional_consistency, r.after.directional_consistency));
        acc.cand.push_back(static_cast<double>(r.candidates));
        acc.valid.push_back(static_cast<double>(r.valid));
        acc.per_valid.push_back(r.valid > 0 ? (r.before.makespan - r.after.makespan) / r.valid : 0.0);
    }
    const auto mean = [](const std::vector<double> &v) {
        if (v.empty()) {
            return 0.0;
        }
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s / static_cast<double>(v.size());
    };
    const auto stddev = [&](const std::vector<double> &v) {
        if (v.size() < 2) {
            return 0.0;
        }
        const double m = mean(v);
        double s = 0.0;
        for (double x : v) {
            s += (x - m) * (x - m);
        }
        return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    std::ostringstream os;
    os << "method,cells,mk_improve_pct_mean,mk_improve_pct_std,pl_improve_pct_mean,"
          "pl_improve_pct_std,dc_improve_pct_mean,dc_improve_pct_std,candidates_mean,valid_mean,"
          "mk_improve_per_valid_s_mean\n";
    for (const auto &name : order) {
        const Acc &acc = by_method[name];
        os << name << ',' << acc.mk.size() << ',' << fmt(mean(acc.mk)) << ',' << fmt(stddev(acc.mk))
           << ',' << fmt(mean(acc.pl)) << ',' << fmt(stddev(acc.pl)) << ',' << fmt(mean(acc.dc))
           << ',' << fmt(stddev(acc.dc)) << ',' << fmt(mean(acc.cand)) << ','
           << fmt(mean(acc.valid)) << ',' << fmt(mean(acc.per_valid)) << '\n';
    }
    return os.str();
}

std::string anytime_to_csv(const BenchRecord &record) {
    std::ostringstream os;
    os << "wall_s,makespan_s,path_length,candidates,valid\n";
    for (const auto &e : record.anytime) {
        os << fmt(e.wall) << ',' << fmt(e.makespan) << ',' << fmt(e.path_length) << ','
           << e.candidates << ',' << e.valid << '\n';
    }
    return os.str();
}

void write_benchmark_outputs(const std::vector<BenchRecord> &records, const std::string &out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "records.csv");
        out << records_to_csv(records);
    }
    {
        std::ofstream out(fs::path(out_dir) / "summary.csv");
        out << summary_to_csv(records);
    }
    for (const auto &r : records) {
        const std::string name =
            r.scenario + "_" + r.method + "_" + std::to_string(r.seed) + ".csv";
        std::ofstream out(fs::path(out_dir) / name);
        out << anytime_to_csv(r);
    }
}

// ---------------------------------------------------------------------------
// Built-in echo corpus

namespace {

RobotModel make_disc(double radius, double v_max = 1.0, double bound = 2.0) {
    RobotModel r;
    r.kind = RobotKind::Disc;
    r.disc_radius = radius;
    r.v_max = v_max;
    r.limits = {{-bound, bound}, {-bound, bound}};
    return r;
}

RobotModel make_arm(Vec2 base, std::vector<double> links, double link_radius = 0.05,
                    double v_max = 1.0) {
    constexpr double kPi = 3.14159265358979323846;
    RobotModel r;
    r.kind = RobotKind::PlanarArm;
    r.base = base;
    r.link_lengths = std::move(links);
    r.link_radius = link_radius;
    r.v_max = v_max;
    r.limits.assign(r.link_lengths.size(), {-kPi, kPi});
    return r;
}

Obstacle circle_obstacle(Vec2 center, double radius) {
    Obstacle o;
    o.shape = Obstacle::Shape::Circle;
    o.center = center;
    o.radius = radius;
    return o;
}

Obstacle rect_obstacle(Vec2 lo, Vec2 hi) {
    Obstacle o;
    o.shape = Obstacle::Shape::Rectangle;
    o.rect = {lo, hi};
    return o;
}

Scenario disc_scenario(std::string name, std::vector<std::pair<Vec2, Vec2>> start_goal,
                       std::vector<Obstacle> obstacles = {}, double radius = 0.1) {
    Scenario sc;
    sc.name = std::move(name);
    for (const auto &[s, g] : start_goal) {
        sc.scene.robots.push_back(make_disc(radius));
        sc.starts.push_back({s.x, s.y});
        sc.goals.push_back({g.x, g.y});
    }
    sc.scene.obstacles = std::move(obstacles);
    sc.budget_s = default_budget(sc.scene);
    return sc;
}

}  // namespace

std::vector<Scenario> builtin_echo_corpus() {
    std::vector<Scenario> out;

    // Antipodal crossings at various separation angles: all robots cross
    // the center region.
    for (const double deg : {40.0, 60.0, 90.0, 120.0, 150.0}) {
        const double th = deg * 3.14159265358979323846 / 180.0;
        const double r = 0.8;
        const Vec2 s0{-r, 0.0}, g0{r, 0.0};
        const Vec2 s1{-r * std::cos(th), -r * std::sin(th)};
        const Vec2 g1{r * std::cos(th), r * std::sin(th)};
        out.push_back(disc_scenario("echo_cross_" + std::to_string(static_cast<int>(deg)),
                                    {{s0, g0}, {s1, g1}}));
    }

    // Head-on swaps along offset lanes; the tight offset forces coordination.
    out.push_back(disc_scenario("echo_swap_wide",
                                {{{-0.6, 0.15}, {0.6, 0.15}}, {{0.6, -0.15}, {-0.6, -0.15}}}));
    out.push_back(disc_scenario("echo_swap_tight",
                                {{{-0.6, 0.08}, {0.6, 0.08}}, {{0.6, -0.08}, {-0.6, -0.08}}}));

    // Corridor between two slabs.
    for (const double gap : {0.5, 0.6}) {
        const double half = gap / 2.0;
        out.push_back(disc_scenario(
            "echo_corridor_" + std::to_string(static_cast<int>(gap * 10)),
            {{{-0.8, 0.0}, {0.8, 0.0}}, {{0.8, 0.12}, {-0.8, 0.12}}},
            {rect_obstacle({-0.2, half}, {0.2, 1.2}), rect_obstacle({-0.2, -1.2}, {0.2, -half})}));
    }

    // Three-disc ring rotations.
    for (const double r : {0.7, 0.9}) {
        std::vector<std::pair<Vec2, Vec2>> sg;
        for (int k = 0; k < 3; ++k) {
            const double a = (90.0 + 120.0 * k) * 3.14159265358979323846 / 180.0;
            const double b = a + 120.0 * 3.14159265358979323846 / 180.0;
            sg.push_back({{r * std::cos(a), r * std::sin(a)}, {r * std::cos(b), r * std::sin(b)}});
        }
        out.push_back(disc_scenario("echo_ring_" + std::to_string(static_cast<int>(r * 10)), sg));
    }
    {
        std::vector<std::pair<Vec2, Vec2>> sg;
        for (int k = 0; k < 3; ++k) {
            const double a = (30.0 + 120.0 * k) * 3.14159265358979323846 / 180.0;
            const double b = a + 120.0 * 3.14159265358979323846 / 180.0;
            sg.push_back({{0.9 * std::cos(a), 0.9 * std::sin(a)}, {0.9 * std::cos(b), 0.9 * std::sin(b)}});
        }
        out.push_back(disc_scenario("echo_ring_blocked", sg, {circle_obstacle({0.0, 0.0}, 0.15)}));
    }

    // Two discs detouring around central obstacles.
    out.push_back(disc_scenario("echo_block_circle",
                                {{{-0.8, 0.05}, {0.8, 0.05}}, {{0.8, -0.05}, {-0.8, -0.05}}},
                                {circle_obstacle({0.0, 0.0}, 0.2)}));
    out.push_back(disc_scenario("echo_block_rect",
                                {{{-0.8, 0.1}, {0.8, -0.1}}, {{0.8, 0.3}, {-0.8, 0.3}}},
                                {rect_obstacle({-0.15, -0.15}, {0.15, 0.15})}));
    out.push_back(disc_scenario("echo_block_two",
                                {{{-0.9, 0.0}, {0.9, 0.0}}, {{0.0, -0.9}, {0.0, 0.9}}},
                                {circle_obstacle({-0.35, 0.25}, 0.12), circle_obstacle({0.35, -0.25}, 0.12)}));

    // Three discs crossing diagonals.
    out.push_back(disc_scenario("echo_diag3_a",
                                {{{-0.8, -0.8}, {0.8, 0.8}}, {{0.8, -0.8}, {-0.8, 0.8}}, {{0.0, 0.9}, {0.0, -0.9}}}));
    out.push_back(disc_scenario("echo_diag3_b",
                                {{{-0.9, -0.3}, {0.9, -0.3}}, {{0.9, 0.3}, {-0.9, 0.3}}, {{0.0, -0.9}, {0.0, 0.9}}}));

    // Two-arm scenes: bases facing each other, end effectors trading sides.
    const auto arm_scenario = [](std::string name, std::vector<double> links, double link_radius,
                                 Config s0, Config g0, Config s1, Config g1) {
        Scenario sc;
        sc.name = std::move(name);
        sc.scene.robots.push_back(make_arm({-1.0, 0.0}, links, link_radius));
        sc.scene.robots.push_back(make_arm({1.0, 0.0}, links, link_radius));
        sc.starts = {std::move(s0), std::move(s1)};
        sc.goals = {std::move(g0), std::move(g1)};
        sc.budget_s = default_budget(sc.scene);
        return sc;
    };
    out.push_back(arm_scenario("echo_arms_face", {0.7, 0.5}, 0.05,
                               {0.8, -0.4}, {-0.8, 0.4},
                               {2.341592653589793, -0.4}, {-2.341592653589793, 0.4}));
    out.push_back(arm_scenario("echo_arms_high", {0.8, 0.6}, 0.05,
                               {1.2, -0.6}, {-1.2, 0.6},
                               {1.941592653589793, 0.6}, {-1.941592653589793, -0.6}));
    out.push_back(arm_scenario("echo_arms_rod", {0.5, 0.9}, 0.05,
                               {0.9, -0.5}, {-0.9, 0.5},
                               {2.241592653589793, -0.5}, {-2.241592653589793, 0.5}));

    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].seed = i + 1;
    }
    return out;
}

}  // namespace mrpost
