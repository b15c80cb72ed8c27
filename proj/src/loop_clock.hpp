#pragma once

#include <chrono>

namespace mrpost::detail {

// Wall clock for time-budgeted loops; a deterministic virtual clock
// (charged per collision check) for iteration-budgeted loops, so seeded
// reruns reproduce rewards and logs exactly.
class LoopClock {
  public:
    explicit LoopClock(bool use_virtual)
        : virtual_(use_virtual), start_(std::chrono::steady_clock::now()) {}

    double elapsed() const {
        if (virtual_) {
            return vtime_;
        }
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    // Accounts one attempt; returns the duration to report for it.
    double charge_attempt(long checks, double wall_seconds) {
        if (!virtual_) {
            return wall_seconds;
        }
        const double d = kAttemptOverhead + kCheckCost * static_cast<double>(checks);
        vtime_ += d;
        return d;
    }

    bool virtual_mode() const { return virtual_; }

  private:
    static constexpr double kCheckCost = 1e-6;       // virtual seconds per collision check
    static constexpr double kAttemptOverhead = 2e-6;  // virtual seconds per attempt

    bool virtual_;
    std::chrono::steady_clock::time_point start_;
    double vtime_ = 0.0;
};

}  // namespace mrpost::detail
