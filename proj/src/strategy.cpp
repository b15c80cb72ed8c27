#include "mrpost/strategy.hpp"

#include <stdexcept>

namespace mrpost {

DtsState DtsState::init(const DtsParams &params) {
    DtsState s;
    s.params = params;
    s.alpha = {params.alpha_composite, params.alpha_prioritized, params.alpha_path};
    s.beta = {params.beta_composite, params.beta_prioritized, params.beta_path};
    return s;
}

Method rr_next(long counter) {
    switch (counter % kNumSelectableMethods) {
        case 0: return Method::Composite;
        case 1: return Method::Prioritized;
        default: return Method::Path;
    }
}

namespace {

double sample_beta(double alpha, double beta, std::mt19937_64 &rng) {
    std::gamma_distribution<double> ga(alpha, 1.0);
    std::gamma_distribution<double> gb(beta, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    const double sum = x + y;
    return sum > 0.0 ? x / sum : 0.5;
}

}  // namespace

Method dts_select(const DtsState &state, std::mt19937_64 &rng) {
    int best = 0;
    double best_theta = -1.0;
    for (int i = 0; i < kNumSelectableMethods; ++i) {
        const double theta = sample_beta(state.alpha[i], state.beta[i], rng);
        if (theta > best_theta) {
            best_theta = theta;
            best = i;
        }
    }
    return static_cast<Method>(best);
}

double dts_reward(const ShortcutOutcome &outcome, const DtsState &state) {
    if (!outcome.accepted) {
        throw std::invalid_argument("dts_reward: outcome was not accepted");
    }
    const double t = outcome.time_spent;
    return outcome.rel_length_reduction +
           state.params.gamma_t * std::max(0.0, 1.0 - t / state.params.sigma);
}

void dts_update(DtsState &state, Method strategy, const ShortcutOutcome &outcome) {
    const int i = static_cast<int>(strategy);
    if (i < 0 || i >= kNumSelectableMethods) {
        throw std::invalid_argument("dts_update: strategy outside the selectable set");
    }
    if (outcome.accepted) {
        state.alpha[i] += state.params.gamma_alpha * dts_reward(outcome, state);
    } else {
        state.beta[i] += state.params.gamma_beta;
    }
    const double sum = state.alpha[i] + state.beta[i];
    if (sum > state.params.z) {
        state.alpha[i] = state.alpha[i] / sum * state.params.z;
        state.beta[i] = state.beta[i] / sum * state.params.z;
    }
}

MultiStrategyResult run_multi_strategy(const SyncTrajectory &traj, const Scene &scene,
                                       SelectorKind kind, const LoopBudget &budget,
                                       std::uint64_t seed, const DtsParams &params) {
    LoopOptions opts;
    opts.endpoint = EndpointKind::Randomized;
    opts.robot_select = RobotSelect::Random;
    opts.budget = budget;
    opts.seed = seed;

    MultiStrategyResult res;
    res.dts = DtsState::init(params);
    if (kind == SelectorKind::RoundRobin) {
        RoundRobinSelector selector;
        res.loop = run_selector_loop(traj, scene, opts, selector);
    } else {
        DtsSelector selector(params);
        res.loop = run_selector_loop(traj, scene, opts, selector);
        res.dts = selector.state();
    }
    return res;
}

}  // namespace mrpost
