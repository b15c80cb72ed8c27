#pragma once

#include <array>

#include "mrpost/shortcut.hpp"

namespace mrpost {

enum class SelectorKind { RoundRobin, Dts };

/// Constants of the Thompson-sampling selector. Defaults follow the
/// shipped tuning: composite gets an optimistic prior so it is tried
/// early, updates are normalized back to sum Z once they exceed it.
struct DtsParams {
    double sigma = 0.01;        // normalizing time scale (s)
    double gamma_t = 1.0;       // weight rewarding shorter attempt runtime
    double gamma_alpha = 100.0; // alpha update weight
    double gamma_beta = 0.1;    // beta update weight
    double z = 1000.0;          // normalization cap for alpha + beta
    double alpha_composite = 10.0;
    double beta_composite = 1.0;
    double alpha_prioritized = 1.0;
    double beta_prioritized = 1.0;
    double alpha_path = 1.0;
    double beta_path = 1.0;
};

/// Per-strategy Beta parameters for {Composite, Prioritized, Path},
/// indexed by Method. TPG is excluded from multi-strategy selection.
struct DtsState {
    DtsParams params;
    std::array<double, 3> alpha{};
    std::array<double, 3> beta{};

    static DtsState init(const DtsParams &params = {});
};

constexpr int kNumSelectableMethods = 3;

/// Composite, Prioritized, Path, Composite, ... in fixed order.
Method rr_next(long counter);

/// Samples theta_s ~ Beta(alpha_s, beta_s) per strategy and returns the
/// argmax; ties break in fixed order Composite < Prioritized < Path.
Method dts_select(const DtsState &state, std::mt19937_64 &rng);

/// r = d + gamma_t * max(0, 1 - t/sigma) for an accepted outcome, where d
/// is the relative path-length reduction and t the attempt runtime.
double dts_reward(const ShortcutOutcome &outcome, const DtsState &state);

/// Accepted: alpha += gamma_alpha * reward. Rejected: beta += gamma_beta.
/// Then both are rescaled to sum exactly Z whenever their sum exceeds it.
void dts_update(DtsState &state, Method strategy, const ShortcutOutcome &outcome);

class RoundRobinSelector : public MethodSelector {
  public:
    Method select(std::mt19937_64 &) override { return rr_next(counter_++); }
    void observe(Method, const ShortcutOutcome &) override {}

  private:
    long counter_ = 0;
};

class DtsSelector : public MethodSelector {
  public:
    explicit DtsSelector(const DtsParams &params = {}) : state_(DtsState::init(params)) {}

    Method select(std::mt19937_64 &rng) override { return dts_select(state_, rng); }
    void observe(Method method, const ShortcutOutcome &outcome) override {
        dts_update(state_, method, outcome);
    }
    const DtsState &state() const { return state_; }

  private:
    DtsState state_;
};

struct MultiStrategyResult {
    LoopResult loop;
    DtsState dts;  // final selector state (initial priors for RoundRobin)
};

/// Each iteration selects one of {Composite, Prioritized, Path}, draws a
/// Randomized candidate, attempts it, and feeds the outcome back into the
/// selector.
MultiStrategyResult run_multi_strategy(const SyncTrajectory &traj, const Scene &scene,
                                       SelectorKind kind, const LoopBudget &budget,
                                       std::uint64_t seed, const DtsParams &params = {});

}  // namespace mrpost
