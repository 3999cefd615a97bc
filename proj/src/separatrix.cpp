#include "pll/separatrix.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "pll/equilibria.hpp"

namespace pll {

namespace {

// one backward run from the seed to theta = 0; returns (y at 1/k, y at 0)
std::pair<double, double> run_trace(const LoopParameters& p, double epsilon,
                                    const IntegratorOptions& opts, Trajectory* out) {
    const EigenSystem saddle = saddle_eigensystem(p);
    // eigenvector of the negative eigenvalue, unit length, y-component up
    double vx = saddle.v2[0].real();
    double vy = saddle.v2[1].real();
    const double norm = std::hypot(vx, vy);
    vx /= norm;
    vy /= norm;
    if (vy < 0.0) {
        vx = -vx;
        vy = -vy;
    }

    EquivState seed{std::numbers::pi + epsilon * vx, epsilon * vy};

    StopSpec stop;
    stop.theta_levels = {0.0};
    Trajectory traj = integrate(seed, p, opts, Direction::Backward, stop);
    if (traj.reason != StopReason::EventHit)
        throw NoCrossingError("trace_separatrix: theta = 0 not reached (" +
                              std::string(to_string(traj.reason)) + ")");

    const double brk = 1.0 / p.slope_k();
    double y_break = std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : traj.samples) {
        if (s.state[0] == brk) {
            y_break = s.state[1];
            break;
        }
    }
    const double y_zero = traj.samples.back().state[1];
    if (out) *out = std::move(traj);
    return {y_break, y_zero};
}

} // namespace

double default_seed_epsilon(const LoopParameters& p) {
    return std::min(1e-6, 1e-8 * std::max(1.0, p.a_k0() * p.slope_k()));
}

SeparatrixTrace trace_separatrix(const LoopParameters& p, double epsilon,
                                 const IntegratorOptions& opts) {
    if (!(epsilon > 0.0) || !(epsilon <= 1e-6))
        throw std::invalid_argument("trace_separatrix: epsilon must be in (0, 1e-6]");

    IntegratorOptions eff = opts;
    if (!eff.max_time) eff.max_time = default_sim_time(p);

    SeparatrixTrace tr;
    auto [yb_coarse, yz_coarse] = run_trace(p, epsilon, eff, nullptr);
    auto [yb_fine, yz_fine] = run_trace(p, epsilon / 10.0, eff, &tr.trajectory);

    tr.seed_epsilon = epsilon;
    tr.y_at_break = yb_fine;
    tr.y_at_zero_raw = yz_fine;
    // first-order seed error dominates: one Richardson level in epsilon
    tr.y_at_zero = yz_fine + (yz_fine - yz_coarse) / 9.0;
    tr.error_estimate = std::abs(yz_fine - yz_coarse) / 9.0 +
                        eff.rel_tol * std::abs(tr.y_at_zero) + eff.abs_tol;
    (void)yb_coarse;
    return tr;
}

SeparatrixTrace trace_separatrix(const LoopParameters& p, const IntegratorOptions& opts) {
    return trace_separatrix(p, default_seed_epsilon(p), opts);
}

LockInResult lock_in_numeric(const LoopParameters& p, const IntegratorOptions& opts) {
    SeparatrixTrace tr = trace_separatrix(p, opts);
    LockInResult r;
    r.omega_l = tr.y_at_zero / 2.0;
    r.case_tag = classify_stable(p);
    r.method = LockInMethod::Numeric;
    r.s_prime_at_zero = tr.y_at_zero;
    r.diagnostics["epsilon"] = tr.seed_epsilon;
    r.diagnostics["err_estimate"] = tr.error_estimate / 2.0;
    r.diagnostics["s_prime_at_break"] = tr.y_at_break;
    r.diagnostics["rel_tol"] = opts.rel_tol;
    r.diagnostics["abs_tol"] = opts.abs_tol;
    return r;
}

} // namespace pll
