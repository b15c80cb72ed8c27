#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrpost/planner.hpp"
#include "mrpost/scenario.hpp"
#include "mrpost/strategy.hpp"
#include "mrpost/tpg.hpp"
#include "mrpost/trajectory_io.hpp"

namespace mrpost {

/// The eight benchmarked post-processing methods: four multi-robot
/// shortcutting methods with randomized endpoints, the two iterative
/// endpoint strategies (combined with path shortcutting), and the two
/// multi-strategy selectors.
enum class BenchMethod { Composite, Prioritized, Path, Tpg, FwdLoop, BwdLoop, RoundRobin, Dts };

const char *bench_method_name(BenchMethod m);
std::optional<BenchMethod> parse_bench_method(const std::string &name);
std::vector<BenchMethod> all_bench_methods();

/// Runs one method on one trajectory (the per-cell work unit).
LoopResult run_bench_method(const SyncTrajectory &traj, const Scene &scene, BenchMethod method,
                            const LoopBudget &budget, std::uint64_t seed,
                            const DtsParams &dts = {});

/// Splitmix-style combination of a scenario seed with a run seed, used to
/// derive the planning rng stream for each (scenario, seed) input.
std::uint64_t mix_seeds(std::uint64_t a, std::uint64_t b);

struct BenchConfig {
    std::vector<Scenario> scenarios;
    std::vector<BenchMethod> methods = all_bench_methods();
    std::vector<std::uint64_t> seeds = {0};
    std::optional<double> budget_override_s;  // overrides per-scenario budgets
    long budget_iterations = -1;              // >= 0 selects deterministic iteration budgets
    int workers = 1;
    double plan_timeout_s = 30.0;
    std::map<std::string, std::string> import_files;  // scenario name -> trajectory file
    DtsParams dts;
};

struct BenchRecord {
    std::string scenario;
    std::string planner;  // "rrt" or "import"
    std::string method;
    std::uint64_t seed = 0;
    int robots = 0;
    bool ok = false;
    std::string error;
    Metrics before;
    Metrics after;
    long candidates = 0;
    long valid = 0;
    AnytimeLog anytime;
};

/// Plans (or imports) every (scenario, seed) input once, then runs every
/// (scenario, method, seed) cell; cells run in parallel across a bounded
/// worker pool, each single-threaded with its own rng. Individual failures
/// are recorded and the run continues.
std::vector<BenchRecord> run_benchmark(const BenchConfig &config);

/// records.csv / summary.csv / one `<scenario>_<method>_<seed>.csv`
/// anytime-sample file per cell. The runtime_s and wall_s columns are
/// wall-clock readings; all other columns are deterministic for seeded
/// iteration-budget runs.
std::string records_to_csv(const std::vector<BenchRecord> &records);
std::string summary_to_csv(const std::vector<BenchRecord> &records);
std::string anytime_to_csv(const BenchRecord &record);
void write_benchmark_outputs(const std::vector<BenchRecord> &records, const std::string &out_dir);

/// Deterministic desk-scale scenario corpus (17 disc + 3 two-arm scenes)
/// used by the qualitative benchmark; also reachable from the CLI.
std::vector<Scenario> builtin_echo_corpus();

double improvement_pct(double before, double after);

}  // namespace mrpost
