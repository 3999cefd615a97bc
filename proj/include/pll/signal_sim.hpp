#pragma once

#include <vector>

#include "pll/loop_params.hpp"

namespace pll {

/// Waveform-level model of the loop: square-wave reference and VCO, sign
/// multiplier as phase detector, active PI filter. kd is kept explicit here
/// even though the impulse-signal characteristic fixes it to 1.
struct SignalParams {
    double omega1 = 0.0;      // reference frequency, rad/s (> 0)
    double omega2_free = 0.0; // VCO free-running frequency, rad/s
    double kv = 0.0;          // VCO gain (> 0)
    double kd = 1.0;          // PD gain (> 0)
    double tau1 = 0.0;        // filter time constants, s (> 0)
    double tau2 = 0.0;
    double theta1_0 = 0.0;    // initial phases, rad
    double theta2_0 = 0.0;
    double x0 = 0.0;          // initial filter state

    void validate() const;

    /// Matching phase-domain parameters: K0 = kv*kd, triangular PD, and the
    /// filter state rescaled by 1/kd.
    LoopParameters loop_parameters() const {
        return {tau1, tau2, kv * kd, kTriangularSlope, omega1 - omega2_free};
    }
};

struct SignalSample {
    double t;
    double theta1;
    double theta2;
    double x;
};

struct SignalTrajectory {
    std::vector<SignalSample> samples; // one per base-grid point
};

/// sign(sin(theta1) * cos(theta2)); exactly 0 on a switching surface.
int multiplier_output(double theta1, double theta2);

/// Fixed-step simulation of the waveform model. Within a base step the
/// multiplier output is piecewise constant, so (x, theta2) advance in closed
/// form per sub-interval; switching times of sin(theta1) are computed
/// exactly from the linear reference phase and those of cos(theta2) are
/// bisected to 1e-12*dt on monotone pieces of the quadratic VCO phase.
/// Requires dt <= 2*pi/(200*omega1).
SignalTrajectory simulate_signal_space(const SignalParams& p, double horizon, double dt);

/// Waveform model vs phase model from matched initial conditions.
struct ModelGapReport {
    double sup_phase_gap = 0.0; // sup over the horizon of |theta_delta gap|
    std::vector<std::pair<double, double>> gap_curve; // (t, gap), decimated
    bool scale_separation_ok = false; // omega1 >= 100 * K0/tau1
};

ModelGapReport compare_models(const SignalParams& p, double horizon);

} // namespace pll
