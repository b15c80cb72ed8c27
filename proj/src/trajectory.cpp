#include "mrpost/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrpost {

double l1_dist(const Config &a, const Config &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("l1_dist: dimension mismatch");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d += std::abs(a[k] - b[k]);
    }
    return d;
}

Config interpolate(const Config &a, const Config &b, double s) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("interpolate: dimension mismatch");
    }
    if (s < 0.0 || s > 1.0) {
        throw std::invalid_argument("interpolate: s outside [0,1]");
    }
    if (s == 0.0) {
        return a;
    }
    if (s == 1.0) {
        return b;
    }
    Config out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = (1.0 - s) * a[k] + s * b[k];
    }
    return out;
}

int segment_step_count(double length, double dt, double v_max) {
    // 1e-9 slack keeps exact grid-multiple lengths from rounding up.
    const int k = static_cast<int>(std::ceil(length / (dt * v_max) - kVelocitySlack));
    return std::max(1, k);
}

std::vector<Config> discretize_segment(const Config &a, const Config &b, double dt, double v_max) {
    if (v_max <= 0.0) {
        throw std::invalid_argument("discretize_segment: v_max must be positive");
    }
    const int steps = segment_step_count(l1_dist(a, b), dt, v_max);
    std::vector<Config> out;
    out.reserve(steps + 1);
    out.push_back(a);
    for (int k = 1; k < steps; ++k) {
        out.push_back(interpolate(a, b, static_cast<double>(k) / steps));
    }
    out.push_back(b);
    return out;
}

NonUniformTrajectory retime_states(const std::vector<std::vector<Config>> &states, const Scene &scene) {
    const int n_robots = static_cast<int>(states.size());
    if (n_robots != scene.num_robots()) {
        throw std::invalid_argument("retime: robot count mismatch with scene");
    }
    const int h = n_robots > 0 ? static_cast<int>(states[0].size()) : 0;
    for (const auto &s : states) {
        if (static_cast<int>(s.size()) != h) {
            throw std::invalid_argument("retime: robots disagree on horizon");
        }
    }

    NonUniformTrajectory out;
    out.states.resize(n_robots);
    if (h == 0) {
        return out;
    }

    // Keep a step only if some robot moved since the previous kept step.
    std::vector<int> kept;
    kept.push_back(0);
    for (int n = 1; n < h; ++n) {
        bool moved = false;
        for (int i = 0; i < n_robots && !moved; ++i) {
            moved = states[i][n] != states[i][kept.back()];
        }
        if (moved) {
            kept.push_back(n);
        }
    }

    out.times.resize(kept.size());
    for (int i = 0; i < n_robots; ++i) {
        out.states[i].reserve(kept.size());
        for (int idx : kept) {
            out.states[i].push_back(states[i][idx]);
        }
    }
    out.times[0] = 0.0;
    for (std::size_t n = 1; n < kept.size(); ++n) {
        double span = 0.0;
        for (int i = 0; i < n_robots; ++i) {
            span = std::max(span, l1_dist(out.states[i][n], out.states[i][n - 1]) / scene.robots[i].v_max);
        }
        out.times[n] = out.times[n - 1] + span;
    }
    return out;
}

NonUniformTrajectory retime(const SyncTrajectory &traj, const Scene &scene) {
    return retime_states(traj.states, scene);
}

SyncTrajectory resample_uniform(const NonUniformTrajectory &traj, const Scene &scene, double dt) {
    if (dt <= 0.0) {
        throw std::invalid_argument("resample_uniform: dt must be positive");
    }
    const int n_robots = traj.num_robots();
    const int n_pts = traj.size();
    SyncTrajectory out;
    out.dt = dt;
    out.states.resize(n_robots);
    if (n_pts == 0) {
        return out;
    }

    const double total = traj.times.back();
    const int h = total <= 0.0 ? 1 : static_cast<int>(std::ceil(total / dt - kVelocitySlack)) + 1;

    int cursor = 0;
    std::vector<int> lo(h), hi_idx(h);
    std::vector<double> frac(h);
    for (int n = 0; n < h; ++n) {
        double t = n * dt;
        if (n == h - 1 || t >= total) {
            lo[n] = hi_idx[n] = n_pts - 1;
            frac[n] = 0.0;
            continue;
        }
        while (cursor + 1 < n_pts && traj.times[cursor + 1] <= t) {
            ++cursor;
        }
        if (traj.times[cursor] == t || cursor + 1 >= n_pts) {
            lo[n] = hi_idx[n] = cursor;
            frac[n] = 0.0;
        } else {
            lo[n] = cursor;
            hi_idx[n] = cursor + 1;
            frac[n] = (t - traj.times[cursor]) / (traj.times[cursor + 1] - traj.times[cursor]);
        }
    }

    for (int i = 0; i < n_robots; ++i) {
        out.states[i].reserve(h);
        for (int n = 0; n < h; ++n) {
            if (lo[n] == hi_idx[n]) {
                out.states[i].push_back(traj.states[i][lo[n]]);
            } else {
                out.states[i].push_back(interpolate(traj.states[i][lo[n]], traj.states[i][hi_idx[n]], frac[n]));
            }
        }
    }

    for (int i = 0; i < n_robots; ++i) {
        const double bound = dt * scene.robots[i].v_max + kVelocitySlack;
        for (int n = 1; n < h; ++n) {
            if (l1_dist(out.states[i][n], out.states[i][n - 1]) > bound) {
                throw std::runtime_error("resample_uniform: velocity bound violated after resampling");
            }
        }
    }
    return out;
}

double makespan(const SyncTrajectory &traj) {
    return traj.horizon() <= 1 ? 0.0 : (traj.horizon() - 1) * traj.dt;
}

double makespan(const NonUniformTrajectory &traj) {
    return traj.times.empty() ? 0.0 : traj.times.back();
}

double path_length(const SyncTrajectory &traj) {
    double total = 0.0;
    for (int i = 0; i < traj.num_robots(); ++i) {
        for (int n = 1; n < traj.horizon(); ++n) {
            total += l1_dist(traj.states[i][n - 1], traj.states[i][n]);
        }
    }
    return total;
}

double directional_consistency(const SyncTrajectory &traj) {
    double total = 0.0;
    for (int i = 0; i < traj.num_robots(); ++i) {
        const auto &s = traj.states[i];
        for (int n = 2; n < traj.horizon(); ++n) {
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::size_t k = 0; k < s[n].size(); ++k) {
                const double va = s[n - 1][k] - s[n - 2][k];
                const double vb = s[n][k] - s[n - 1][k];
                dot += va * vb;
                na += va * va;
                nb += vb * vb;
            }
            na = std::sqrt(na);
            nb = std::sqrt(nb);
            if (na < kZeroVecNorm || nb < kZeroVecNorm) {
                continue;
            }
            total += 1.0 - dot / (na * nb);
        }
    }
    return total;
}

int last_motion_step(const SyncTrajectory &traj, int robot) {
    const auto &s = traj.states[robot];
    int n = traj.horizon() - 1;
    while (n > 0 && s[n - 1] == s[n]) {
        --n;
    }
    return n;
}

std::vector<Violation> validate(const SyncTrajectory &traj, const Scene &scene,
                                double substep_resolution) {
    std::vector<Violation> out;
    const int n_robots = traj.num_robots();
    if (n_robots != scene.num_robots()) {
        out.push_back({Violation::Kind::Dimension, -1, -1, -1, "robot count mismatch with scene"});
        return out;
    }
    const int h = traj.horizon();
    for (int i = 0; i < n_robots; ++i) {
        if (static_cast<int>(traj.states[i].size()) != h) {
            out.push_back({Violation::Kind::Dimension, i, -1, -1, "horizon mismatch"});
            return out;
        }
        const int dof = scene.robots[i].dof();
        for (int n = 0; n < h; ++n) {
            if (static_cast<int>(traj.states[i][n].size()) != dof) {
                out.push_back({Violation::Kind::Dimension, i, -1, n, "config dimension != dof"});
                return out;
            }
        }
    }

    for (int i = 0; i < n_robots; ++i) {
        const double bound = traj.dt * scene.robots[i].v_max + kVelocitySlack;
        for (int n = 1; n < h; ++n) {
            const double d = l1_dist(traj.states[i][n - 1], traj.states[i][n]);
            if (d > bound) {
                out.push_back({Violation::Kind::Velocity, i, -1, n,
                               "step length " + std::to_string(d) + " > " + std::to_string(bound)});
            }
        }
        for (int n = 0; n < h; ++n) {
            if (!within_limits(scene.robots[i], traj.states[i][n])) {
                out.push_back({Violation::Kind::JointLimit, i, -1, n, "outside joint limits"});
            }
            if (robot_hits_obstacle(scene, i, traj.states[i][n])) {
                out.push_back({Violation::Kind::Obstacle, i, -1, n, "robot-obstacle overlap"});
            }
        }
    }
    for (int n = 0; n < h; ++n) {
        for (int i = 0; i < n_robots; ++i) {
            for (int j = i + 1; j < n_robots; ++j) {
                if (robots_collide(scene, i, traj.states[i][n], j, traj.states[j][n])) {
                    out.push_back({Violation::Kind::RobotRobot, i, j, n, "robot-robot overlap"});
                }
            }
        }
    }

    if (substep_resolution > 0.0) {
        std::vector<Config> column(n_robots);
        for (int n = 1; n < h; ++n) {
            double span = 0.0;
            for (int i = 0; i < n_robots; ++i) {
                span = std::max(span, l1_dist(traj.states[i][n - 1], traj.states[i][n]));
            }
            const int substeps = static_cast<int>(std::ceil(span / substep_resolution));
            for (int k = 1; k < substeps; ++k) {
                const double s = static_cast<double>(k) / substeps;
                for (int i = 0; i < n_robots; ++i) {
                    column[i] = interpolate(traj.states[i][n - 1], traj.states[i][n], s);
                }
                if (!composite_config_valid(scene, column)) {
                    out.push_back({Violation::Kind::RobotRobot, -1, -1, n - 1,
                                   "interpolated collision between steps"});
                    break;
                }
            }
        }
    }
    return out;
}

Metrics compute_metrics(const SyncTrajectory &traj, double runtime) {
    Metrics m;
    m.makespan = makespan(traj);
    m.path_length = path_length(traj);
    m.directional_consistency = directional_consistency(traj);
    m.runtime = runtime;
    return m;
}

}  // namespace mrpost
