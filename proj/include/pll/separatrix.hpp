#pragma once

#include <stdexcept>

#include "pll/integrate.hpp"
#include "pll/lockin_analytic.hpp"
#include "pll/loop_params.hpp"

namespace pll {

/// Backward-time trace of the saddle's upper separatrix in the equivalent
/// system, seeded a distance seed_epsilon from (pi, 0) along the stable
/// eigendirection. y_at_break and y_at_zero are the recorded crossings
/// S'(1/k) and S'(0); y_at_zero carries one Richardson refinement over
/// epsilon together with an error estimate.
struct SeparatrixTrace {
    Trajectory trajectory; // the finer of the two epsilon runs
    double seed_epsilon = 0.0;
    double y_at_break = 0.0;
    double y_at_zero = 0.0;     // extrapolated
    double y_at_zero_raw = 0.0; // finest single-run value
    double error_estimate = 0.0;
};

/// The separatrix failed to reach theta = 0 within the time budget.
struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Seed-offset default: 1e-8 * max(1, a*K0*k), capped at 1e-6.
double default_seed_epsilon(const LoopParameters& p);

SeparatrixTrace trace_separatrix(const LoopParameters& p, double epsilon,
                                 const IntegratorOptions& opts = {});

SeparatrixTrace trace_separatrix(const LoopParameters& p,
                                 const IntegratorOptions& opts = {});

/// omega_l = S'(theta_eq^s)/2 from the traced separatrix.
LockInResult lock_in_numeric(const LoopParameters& p, const IntegratorOptions& opts = {});

} // namespace pll
