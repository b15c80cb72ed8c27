#include "mrpost/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mrpost {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string violation_report(const std::vector<Violation> &violations) {
    std::ostringstream os;
    os << violations.size() << " violation(s):";
    for (const auto &v : violations) {
        os << " [robot " << v.robot;
        if (v.other_robot >= 0) {
            os << " vs " << v.other_robot;
        }
        os << ", step " << v.step << ": " << v.detail << "]";
    }
    return os.str();
}

}  // namespace

std::string trajectory_to_text(const SyncTrajectory &traj) {
    std::ostringstream os;
    os << "# mrpost trajectory\n";
    os << "version 1\n";
    os << "robots " << traj.num_robots() << "\n";
    os << "dof";
    for (const auto &seq : traj.states) {
        os << " " << (seq.empty() ? 0 : seq[0].size());
    }
    os << "\n";
    for (int n = 0; n < traj.horizon(); ++n) {
        os << "step " << fmt_double(n * traj.dt);
        for (int i = 0; i < traj.num_robots(); ++i) {
            for (double v : traj.states[i][n]) {
                os << " " << fmt_double(v);
            }
        }
        os << "\n";
    }
    return os.str();
}

void export_trajectory(const SyncTrajectory &traj, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    out << trajectory_to_text(traj);
}

ParsedTrajectory parse_trajectory_text(const std::string &text, const std::string &context) {
    ParsedTrajectory out;
    std::istringstream in(text);
    std::string line;
    int robots = -1;
    std::vector<int> dofs;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fail = [&](const std::string &msg) {
            throw std::runtime_error(context + ":" + std::to_string(line_no) + ": " + msg);
        };
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "version") {
            int v = 0;
            ls >> v;
            if (v != 1) {
                fail("unsupported version");
            }
        } else if (key == "robots") {
            ls >> robots;
            if (robots < 1) {
                fail("robots must be >= 1");
            }
            out.states.resize(robots);
        } else if (key == "dof") {
            if (robots < 0) {
                fail("dof before robots");
            }
            int d = 0;
            while (ls >> d) {
                if (d < 1) {
                    fail("dof values must be >= 1");
                }
                dofs.push_back(d);
            }
            if (static_cast<int>(dofs.size()) != robots) {
                fail("expected one dof per robot");
            }
        } else if (key == "step") {
            if (dofs.empty()) {
                fail("step before dof");
            }
            double t = 0.0;
            if (!(ls >> t)) {
                fail("missing timestamp");
            }
            if (!out.times.empty() && t <= out.times.back()) {
                fail("timestamps must be strictly increasing");
            }
            if (out.times.empty() && t != 0.0) {
                fail("first timestamp must be 0");
            }
            out.times.push_back(t);
            for (int i = 0; i < robots; ++i) {
                Config c(dofs[i]);
                for (int k = 0; k < dofs[i]; ++k) {
                    if (!(ls >> c[k])) {
                        fail("robot " + std::to_string(i) + ": expected " +
                             std::to_string(dofs[i]) + " values");
                    }
                    if (!std::isfinite(c[k])) {
                        fail("non-finite value");
                    }
                }
                out.states[i].push_back(std::move(c));
            }
            double extra;
            if (ls >> extra) {
                fail("trailing values on step line");
            }
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (out.times.empty()) {
        throw std::runtime_error(context + ": no steps found");
    }
    return out;
}

SyncTrajectory import_trajectory_text(const std::string &text, const Scene &scene, double dt,
                                      const std::string &context) {
    ParsedTrajectory parsed = parse_trajectory_text(text, context);
    if (static_cast<int>(parsed.states.size()) != scene.num_robots()) {
        throw std::runtime_error(context + ": file has " + std::to_string(parsed.states.size()) +
                                 " robots, scene has " + std::to_string(scene.num_robots()));
    }
    for (int i = 0; i < scene.num_robots(); ++i) {
        const int dof = scene.robots[i].dof();
        if (!parsed.states[i].empty() && static_cast<int>(parsed.states[i][0].size()) != dof) {
            throw std::runtime_error(context + ": robot " + std::to_string(i) + " has dof " +
                                     std::to_string(parsed.states[i][0].size()) + ", scene expects " +
                                     std::to_string(dof));
        }
    }

    bool uniform = true;
    for (std::size_t n = 0; n < parsed.times.size(); ++n) {
        if (std::abs(parsed.times[n] - static_cast<double>(n) * dt) > 1e-9) {
            uniform = false;
            break;
        }
    }
    if (uniform) {
        SyncTrajectory direct;
        direct.dt = dt;
        direct.states = parsed.states;
        if (validate(direct, scene).empty()) {
            return direct;
        }
        // fall through: retiming may repair speed violations
    }

    const NonUniformTrajectory retimed = retime_states(parsed.states, scene);
    SyncTrajectory out = resample_uniform(retimed, scene, dt);
    const auto violations = validate(out, scene);
    if (!violations.empty()) {
        throw std::runtime_error(context + ": invalid after retiming: " + violation_report(violations));
    }
    return out;
}

SyncTrajectory import_trajectory(const std::string &path, const Scene &scene, double dt) {
    return import_trajectory_text(read_file(path), scene, dt, path);
}

}  // namespace mrpost
