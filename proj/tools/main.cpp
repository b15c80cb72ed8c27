// Benchmark CLI for multi-robot trajectory shortcutting.
//
//   mrpost plan      --scenario s.json --out traj.txt
//   mrpost shortcut  --scenario s.json --method dts --budget 5 --out traj.txt
//   mrpost bench     --scenario-dir scenarios --out-dir results
//   mrpost validate  --scenario s.json --traj traj.txt

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrpost/bench.hpp"

namespace fs = std::filesystem;
using namespace mrpost;

namespace {

DtsParams load_dts_params(const std::string &path) {
    DtsParams p;
    if (path.empty()) {
        return p;
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open");
    }
    nlohmann::json j;
    in >> j;
    p.sigma = j.value("sigma", p.sigma);
    p.gamma_t = j.value("gamma_t", p.gamma_t);
    p.gamma_alpha = j.value("gamma_alpha", p.gamma_alpha);
    p.gamma_beta = j.value("gamma_beta", p.gamma_beta);
    p.z = j.value("z", p.z);
    p.alpha_composite = j.value("alpha_composite", p.alpha_composite);
    p.beta_composite = j.value("beta_composite", p.beta_composite);
    p.alpha_prioritized = j.value("alpha_prioritized", p.alpha_prioritized);
    p.beta_prioritized = j.value("beta_prioritized", p.beta_prioritized);
    p.alpha_path = j.value("alpha_path", p.alpha_path);
    p.beta_path = j.value("beta_path", p.beta_path);
    return p;
}

std::vector<BenchMethod> parse_methods(const std::string &list) {
    std::vector<BenchMethod> methods;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        const auto m = parse_bench_method(item);
        if (!m) {
            throw std::runtime_error("unknown method '" + item + "'");
        }
        methods.push_back(*m);
    }
    if (methods.empty()) {
        throw std::runtime_error("no methods given");
    }
    return methods;
}

int cmd_plan(const std::string &scenario_path, const std::string &out_path, std::uint64_t seed,
             double timeout, double dt) {
    Scenario scen = load_scenario(scenario_path);
    if (dt > 0) {
        scen.dt = dt;
    }
    RrtParams params;
    params.timeout_s = timeout;
    const auto traj = plan_rrt_connect(scen, seed == 0 ? scen.seed : seed, params);
    if (!traj) {
        std::cerr << "planning failed: " << scen.name << " (timeout " << timeout << " s)\n";
        return 1;
    }
    export_trajectory(*traj, out_path);
    const Metrics m = compute_metrics(*traj);
    std::cout << scen.name << ": planned H=" << traj->horizon() << " makespan=" << m.makespan
              << " path_length=" << m.path_length << " -> " << out_path << "\n";
    return 0;
}

int cmd_shortcut(const std::string &scenario_path, const std::string &traj_path,
                 const std::string &method_name, double budget, long iterations,
                 std::uint64_t seed, const std::string &out_path, const std::string &log_path,
                 const std::string &dts_config, const std::string &dump_tpg, double dt) {
    Scenario scen = load_scenario(scenario_path);
    if (dt > 0) {
        scen.dt = dt;
    }
    const auto method = parse_bench_method(method_name);
    if (!method) {
        std::cerr << "unknown method '" << method_name << "'\n";
        return 2;
    }
    SyncTrajectory input;
    if (!traj_path.empty()) {
        input = import_trajectory(traj_path, scen.scene, scen.dt);
    } else {
        RrtParams params;
        const auto planned = plan_rrt_connect(scen, scen.seed, params);
        if (!planned) {
            std::cerr << "planning failed for " << scen.name << "\n";
            return 1;
        }
        input = *planned;
    }
    LoopBudget lb;
    lb.seconds = budget > 0 ? budget : scen.budget_s;
    lb.iterations = iterations;
    const LoopResult result =
        run_bench_method(input, scen.scene, *method, lb, seed, load_dts_params(dts_config));

    const auto violations = validate(result.trajectory, scen.scene);
    if (!violations.empty()) {
        std::cerr << "output failed validation (" << violations.size() << " violations)\n";
        return 1;
    }
    const Metrics before = compute_metrics(input);
    const Metrics after = compute_metrics(result.trajectory, result.runtime_s);
    std::cout << scen.name << " " << method_name << ": makespan " << before.makespan << " -> "
              << after.makespan << " s (" << improvement_pct(before.makespan, after.makespan)
              << "%), path length " << before.path_length << " -> " << after.path_length << ", "
              << result.valid << "/" << result.candidates << " shortcuts accepted in "
              << result.runtime_s << " s\n";
    if (!out_path.empty()) {
        export_trajectory(result.trajectory, out_path);
    }
    if (!log_path.empty()) {
        BenchRecord rec;
        rec.anytime = result.log;
        std::ofstream out(log_path);
        out << anytime_to_csv(rec);
    }
    if (!dump_tpg.empty()) {
        std::ofstream out(dump_tpg);
        out << tpg_to_dot(build_tpg(result.trajectory, scen.scene));
    }
    return 0;
}

int cmd_bench(std::vector<std::string> scenario_paths, const std::string &scenario_dir,
              bool builtin, const std::string &methods_list, const std::string &seeds_list,
              double budget, long iterations, const std::string &out_dir, int workers,
              double plan_timeout, const std::vector<std::string> &imports,
              const std::string &dts_config, double dt) {
    BenchConfig config;
    if (!scenario_dir.empty()) {
        std::vector<std::string> found;
        for (const auto &entry : fs::directory_iterator(scenario_dir)) {
            if (entry.path().extension() == ".json") {
                found.push_back(entry.path().string());
            }
        }
        std::sort(found.begin(), found.end());
        scenario_paths.insert(scenario_paths.end(), found.begin(), found.end());
    }
    for (const auto &p : scenario_paths) {
        config.scenarios.push_back(load_scenario(p));
    }
    if (builtin) {
        auto corpus = builtin_echo_corpus();
        config.scenarios.insert(config.scenarios.end(), corpus.begin(), corpus.end());
    }
    if (config.scenarios.empty()) {
        std::cerr << "no scenarios given\n";
        return 2;
    }
    if (dt > 0) {
        for (auto &scen : config.scenarios) {
            scen.dt = dt;
        }
    }
    if (!methods_list.empty()) {
        config.methods = parse_methods(methods_list);
    }
    if (!seeds_list.empty()) {
        config.seeds.clear();
        std::stringstream ss(seeds_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) {
                config.seeds.push_back(std::stoull(item));
            }
        }
    }
    if (budget > 0) {
        config.budget_override_s = budget;
    }
    config.budget_iterations = iterations;
    config.workers = workers;
    config.plan_timeout_s = plan_timeout;
    config.dts = load_dts_params(dts_config);
    for (const auto &spec : imports) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
            std::cerr << "--import expects name=path, got '" << spec << "'\n";
            return 2;
        }
        config.import_files[spec.substr(0, eq)] = spec.substr(eq + 1);
    }

    const auto records = run_benchmark(config);
    write_benchmark_outputs(records, out_dir);

    int failures = 0;
    for (const auto &r : records) {
        if (!r.ok) {
            ++failures;
            std::cerr << "FAILED " << r.scenario << " " << r.method << " seed " << r.seed << ": "
                      << r.error << "\n";
        }
    }
    std::cout << records.size() - failures << "/" << records.size() << " cells ok; results in "
              << out_dir << "\n";
    std::cout << summary_to_csv(records);
    return failures == 0 ? 0 : 1;
}

int cmd_validate(const std::string &scenario_path, const std::string &traj_path, double substep) {
    const Scenario scen = load_scenario(scenario_path);
    SyncTrajectory traj;
    try {
        traj = import_trajectory(traj_path, scen.scene, scen.dt);
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    const auto violations = validate(traj, scen.scene, substep);
    if (violations.empty()) {
        std::cout << "valid: H=" << traj.horizon() << " makespan=" << makespan(traj) << " s\n";
        return 0;
    }
    for (const auto &v : violations) {
        std::cerr << "violation: robot " << v.robot;
        if (v.other_robot >= 0) {
            std::cerr << " vs " << v.other_robot;
        }
        std::cerr << " step " << v.step << ": " << v.detail << "\n";
    }
    return 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"multi-robot trajectory shortcutting benchmark"};
    app.require_subcommand(1);

    std::string scenario_path, traj_path, out_path, log_path, dts_config, dump_tpg;
    std::string methods_list, seeds_list, scenario_dir, out_dir = "results";
    std::vector<std::string> scenario_paths, imports;
    std::uint64_t seed = 0;
    double budget = 0.0, timeout = 30.0, dt = 0.0, substep = 0.0;
    long iterations = -1;
    int workers = 1;
    bool builtin = false;

    auto *plan = app.add_subcommand("plan", "plan a trajectory with composite-space RRT-Connect");
    plan->add_option("--scenario", scenario_path, "scenario file")->required();
    plan->add_option("--out", out_path, "output trajectory file")->required();
    plan->add_option("--seed", seed, "rng seed (default: scenario seed)");
    plan->add_option("--timeout", timeout, "planning timeout (s)");
    plan->add_option("--dt", dt, "timestep override (s)");

    auto *shortcut = app.add_subcommand("shortcut", "post-process a trajectory");
    shortcut->add_option("--scenario", scenario_path, "scenario file")->required();
    shortcut->add_option("--traj", traj_path, "input trajectory (default: plan with RRT-Connect)");
    shortcut->add_option("--method", methods_list, "composite|prioritized|path|tpg|fwd_loop|bwd_loop|rr|dts")
        ->required();
    shortcut->add_option("--budget", budget, "budget in seconds (default: scenario budget)");
    shortcut->add_option("--iterations", iterations, "budget in candidate count (deterministic)");
    shortcut->add_option("--seed", seed, "rng seed");
    shortcut->add_option("--out", out_path, "write the shortcut trajectory here");
    shortcut->add_option("--log", log_path, "write the anytime log csv here");
    shortcut->add_option("--dts-config", dts_config, "json file overriding DTS constants");
    shortcut->add_option("--dump-tpg", dump_tpg, "write the final trajectory's TPG as dot");
    shortcut->add_option("--dt", dt, "timestep override (s)");

    auto *bench = app.add_subcommand("bench", "run the benchmark grid and write CSVs");
    bench->add_option("--scenario", scenario_paths, "scenario file (repeatable)");
    bench->add_option("--scenario-dir", scenario_dir, "directory of scenario .json files");
    bench->add_flag("--builtin-corpus", builtin, "add the built-in echo corpus");
    bench->add_option("--methods", methods_list, "comma-separated methods (default: all)");
    bench->add_option("--seeds", seeds_list, "comma-separated seeds (default: 0)");
    bench->add_option("--budget", budget, "budget override in seconds");
    bench->add_option("--iterations", iterations, "budget in candidate count (deterministic)");
    bench->add_option("--out-dir", out_dir, "output directory");
    bench->add_option("--workers", workers, "parallel cells");
    bench->add_option("--plan-timeout", timeout, "planning timeout per input (s)");
    bench->add_option("--import", imports, "scenario=trajectory-file (skip planning)");
    bench->add_option("--dts-config", dts_config, "json file overriding DTS constants");
    bench->add_option("--dt", dt, "timestep override (s)");

    auto *validate_cmd = app.add_subcommand("validate", "check a trajectory against a scenario");
    validate_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    validate_cmd->add_option("--traj", traj_path, "trajectory file")->required();
    validate_cmd->add_option("--substep", substep,
                             "optional finer collision-check resolution between steps (L1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) {
            return cmd_plan(scenario_path, out_path, seed, timeout, dt);
        }
        if (shortcut->parsed()) {
            return cmd_shortcut(scenario_path, traj_path, methods_list, budget, iterations, seed,
                                out_path, log_path, dts_config, dump_tpg, dt);
        }
        if (bench->parsed()) {
            return cmd_bench(scenario_paths, scenario_dir, builtin, methods_list, seeds_list,
                             budget, iterations, out_dir, workers, timeout, imports, dts_config,
                             dt);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(scenario_path, traj_path, substep);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
