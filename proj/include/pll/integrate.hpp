#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "pll/loop_params.hpp"
#include "pll/phase_model.hpp"

namespace pll {

enum class SystemKind { Phase, Equiv };
enum class Direction { Forward, Backward };

enum class StopReason { EventHit, Converged, TimeLimit, StepUnderflow };

const char* to_string(StopReason r);

/// Tolerances and limits of the adaptive integrator. max_time is the horizon
/// of |t - t0|; when unset, callers derive it from the slow eigen-time of the
/// loop (see default_sim_time).
struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1e30;
    double event_tol = 1e-12; // rad, for locating theta-level crossings
    std::optional<double> max_time;
};

/// One accepted integration point. state is {theta_delta, x} for the Phase
/// system and {theta_delta, y} for the Equiv system; deriv is d(state)/dt
/// with respect to true (signed) time.
struct TrajectorySample {
    double t;
    std::array<double, 2> state;
    std::array<double, 2> deriv;
};

struct Trajectory {
    SystemKind system = SystemKind::Phase;
    std::vector<TrajectorySample> samples;
    StopReason reason = StopReason::TimeLimit;
    int event_index = -1; // which stop level fired when reason == EventHit
};

/// Stop conditions: the first crossing of any theta level ends the run with
/// EventHit; a convergence predicate must hold on dwell_steps consecutive
/// accepted samples to end with Converged.
struct StopSpec {
    std::vector<double> theta_levels;
    std::function<bool(const TrajectorySample&)> converged;
    int dwell_steps = 10;
};

/// Horizon heuristic: 10^3 multiples of the slow eigen-time 2/(a*K0*k).
double default_sim_time(const LoopParameters& p);

/// Adaptive Dormand-Prince 5(4) integration of either phase-plane system.
/// The vector field is frozen to the current zigzag piece during a step;
/// kink crossings (and the requested stop levels) are located by bisection
/// on the step size to opts.event_tol, inserted as samples, and the piece is
/// switched there, so the discontinuity in the field's theta-derivative
/// never degrades the order of the pair.
Trajectory integrate(SystemKind system, std::array<double, 2> state0,
                     const LoopParameters& params, const IntegratorOptions& opts,
                     Direction direction, const StopSpec& stop, double t0 = 0.0);

Trajectory integrate(const PhaseState& s0, const LoopParameters& params,
                     const IntegratorOptions& opts, Direction direction,
                     const StopSpec& stop);

Trajectory integrate(const EquivState& s0, const LoopParameters& params,
                     const IntegratorOptions& opts, Direction direction,
                     const StopSpec& stop);

/// Cubic-Hermite evaluation of a trajectory at time t (clamped to the
/// sampled range).
std::array<double, 2> eval_state(const Trajectory& traj, double t);

} // namespace pll
