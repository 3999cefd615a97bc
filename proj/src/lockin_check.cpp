#include "pll/lockin_check.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pll {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

const char* to_string(LockOutcome o) {
    switch (o) {
        case LockOutcome::Locks: return "locks";
        case LockOutcome::Slips: return "slips";
        case LockOutcome::Undetermined: return "undetermined";
    }
    return "?";
}

CycleSlipReport detect_cycle_slip(const Trajectory& traj) {
    if (traj.samples.empty())
        throw std::invalid_argument("detect_cycle_slip: empty trajectory");
    const double theta0 = traj.samples.front().state[0];
    CycleSlipReport r;
    for (const auto& s : traj.samples)
        r.max_excursion = std::max(r.max_excursion, std::abs(theta0 - s.state[0]));
    r.slipped = r.max_excursion >= kTwoPi;
    return r;
}

LockCheckReport check_lock_in(const LoopParameters& base, double omega,
                              const IntegratorOptions& opts) {
    if (!(omega >= 0.0))
        throw std::invalid_argument("check_lock_in: omega must be >= 0");

    const LoopParameters p = base.with_omega_delta(omega);
    const PhaseState start{0.0, -omega * p.tau1() / p.k0()};

    IntegratorOptions eff = opts;
    if (!eff.max_time) eff.max_time = default_sim_time(p);

    const double y_tol = 1e-6 * p.b_k0();
    StopSpec stop;
    stop.theta_levels = {-kTwoPi, kTwoPi};
    stop.dwell_steps = 10;
    stop.converged = [&p, y_tol](const TrajectorySample& s) {
        // deriv[0] is d(theta)/dt = y along the phase trajectory
        return std::abs(wrap_phase(s.state[0])) < 1e-6 && std::abs(s.deriv[0]) < y_tol;
    };

    Trajectory traj = integrate(start, p, eff, Direction::Forward, stop);

    LockCheckReport rep;
    rep.stop_reason = traj.reason;
    rep.sim_time = traj.samples.back().t;
    rep.max_excursion = detect_cycle_slip(traj).max_excursion;

    switch (traj.reason) {
        case StopReason::EventHit:
            rep.outcome = LockOutcome::Slips;
            rep.max_excursion = kTwoPi;
            break;
        case StopReason::Converged: {
            const double theta_end = traj.samples.back().state[0];
            const double n = std::nearbyint(theta_end / kTwoPi);
            rep.outcome = (n == 0.0) ? LockOutcome::Locks : LockOutcome::Slips;
            break;
        }
        default:
            rep.outcome = LockOutcome::Undetermined;
            break;
    }
    return rep;
}

} // namespace pll
