#pragma once

#include "pll/integrate.hpp"
#include "pll/loop_params.hpp"

namespace pll {

/// Cycle slipping: the unwrapped phase error wandered 2*pi or more away
/// from its initial value.
struct CycleSlipReport {
    bool slipped = false;
    double max_excursion = 0.0; // sup over samples of |theta(0) - theta(t)|
};

CycleSlipReport detect_cycle_slip(const Trajectory& traj);

enum class LockOutcome { Locks, Slips, Undetermined };

const char* to_string(LockOutcome o);

struct LockCheckReport {
    LockOutcome outcome = LockOutcome::Undetermined;
    double max_excursion = 0.0;
    double sim_time = 0.0;
    StopReason stop_reason = StopReason::TimeLimit;
};

/// Frequency-step scenario behind the lock-in definition: the loop sits in
/// the locked state of deviation -omega (theta = 0, x = -omega*tau1/K0) and
/// the deviation steps to +omega. Locks when the state settles back onto the
/// equilibrium at theta = 0 without the phase error ever reaching 2*pi;
/// Slips when it does reach 2*pi or settles onto a 2*pi-shifted equilibrium;
/// Undetermined when the time budget runs out first.
LockCheckReport check_lock_in(const LoopParameters& base, double omega,
                              const IntegratorOptions& opts = {});

} // namespace pll
