#include "pll/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pll {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::EventHit: return "event";
        case StopReason::Converged: return "converged";
        case StopReason::TimeLimit: return "time-limit";
        case StopReason::StepUnderflow: return "step-underflow";
    }
    return "?";
}

double default_sim_time(const LoopParameters& p) {
    return 1e3 * 2.0 / (p.a_k0() * p.slope_k());
}

namespace {

using State = std::array<double, 2>;

// Dormand-Prince 5(4) tableau. b-row equals the last a-row (FSAL); e is the
// difference between the 5th- and 4th-order weights.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

// vector field of the selected system on one frozen zigzag piece, in internal
// (always-increasing) time
struct FrozenRhs {
    SystemKind system;
    const LoopParameters* p;
    double sign; // +1 forward, -1 backward

    State operator()(const ZigzagRegion& r, const State& s) const {
        const double phi = r.value_at(s[0]);
        if (system == SystemKind::Phase) {
            const double dtheta =
                p->omega_delta_free() - p->b_k0() * (s[1] + p->tau2() * phi);
            return {sign * dtheta, sign * phi};
        }
        const double dy = -p->a_k0() * r.slope * s[1] - p->b_k0() * phi;
        return {sign * s[1], sign * dy};
    }
};

struct StepOutcome {
    State y;
    State f; // field at y (internal time), from the FSAL stage
    double err = 0.0;
};

StepOutcome rk_step(const FrozenRhs& rhs, const ZigzagRegion& reg, const State& y0,
                    const State& f0, double h, const IntegratorOptions& opts) {
    State k1 = f0;
    State y;
    for (int i = 0; i < 2; ++i) y[i] = y0[i] + h * A21 * k1[i];
    State k2 = rhs(reg, y);
    for (int i = 0; i < 2; ++i) y[i] = y0[i] + h * (A31 * k1[i] + A32 * k2[i]);
    State k3 = rhs(reg, y);
    for (int i = 0; i < 2; ++i)
        y[i] = y0[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    State k4 = rhs(reg, y);
    for (int i = 0; i < 2; ++i)
        y[i] = y0[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    State k5 = rhs(reg, y);
    for (int i = 0; i < 2; ++i)
        y[i] = y0[i] +
               h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    State k6 = rhs(reg, y);

    StepOutcome out;
    for (int i = 0; i < 2; ++i)
        out.y[i] = y0[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                                B6 * k6[i]);
    out.f = rhs(reg, out.y); // k7

    double err2 = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                              E6 * k6[i] + E7 * out.f[i]);
        const double sc =
            opts.abs_tol + opts.rel_tol * std::max(std::abs(y0[i]), std::abs(out.y[i]));
        err2 += (e / sc) * (e / sc);
    }
    out.err = std::sqrt(err2 / 2.0);
    return out;
}

// interior extrema of the cubic Hermite interpolant of theta over one step,
// as fractions of h in (0, 1)
int hermite_extrema(double th0, double d0, double th1, double d1, double h,
                    double* out) {
    const double dth = th0 - th1;
    const double qa = 6.0 * dth + 3.0 * h * (d0 + d1);
    const double qb = -6.0 * dth - 4.0 * h * d0 - 2.0 * h * d1;
    const double qc = h * d0;
    int n = 0;
    if (qa == 0.0) {
        if (qb != 0.0) {
            const double xi = -qc / qb;
            if (xi > 0.0 && xi < 1.0) out[n++] = xi;
        }
        return n;
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    for (double xi : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)})
        if (xi > 0.0 && xi < 1.0) out[n++] = xi;
    return n;
}

struct Crossing {
    double h;
    State y;
    double level;
    int stop_index; // >= 0 when a stop level, -1 for a region bound
    bool upward;    // theta increased through the level
};

// Bisect the step size until the theta component of the (frozen-piece)
// solution lands on the level to within event_tol.
Crossing locate_crossing(const FrozenRhs& rhs, const ZigzagRegion& reg, const State& y0,
                         const State& f0, double ha, double hb, double level,
                         const IntegratorOptions& opts) {
    const double ga = (ha == 0.0) ? y0[0] - level
                                  : rk_step(rhs, reg, y0, f0, ha, opts).y[0] - level;
    double lo = ha, hi = hb;
    double glo = ga;
    StepOutcome best = rk_step(rhs, reg, y0, f0, hb, opts);
    double ghi = best.y[0] - level;
    double hbest = hb;
    for (int it = 0; it < 200 && std::abs(ghi) > opts.event_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        StepOutcome trial = rk_step(rhs, reg, y0, f0, mid, opts);
        const double gm = trial.y[0] - level;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        best = trial;
        ghi = gm;
        hbest = mid;
    }
    Crossing c;
    c.h = hbest;
    c.y = best.y;
    c.level = level;
    c.stop_index = -1;
    c.upward = y0[0] < level;
    return c;
}

struct Stepper {
    FrozenRhs rhs;
    const LoopParameters* params;
    IntegratorOptions opts;
    ZigzagRegion region;
    State y;
    State f; // internal-time field at y
    double s = 0.0;

    // pick the zigzag piece for a state that may sit exactly on a kink: lean
    // into the direction of motion, falling back to the theta acceleration
    // when the rate vanishes
    void assign_initial_region() {
        region = region_at(y[0], params->slope_k());
        const double inv_k = 1.0 / params->slope_k();
        const double u = wrap_phase(y[0]);
        if (std::abs(std::abs(u) - inv_k) > kBreakpointTol) return;
        double dtheta = rhs(region, y)[0];
        if (dtheta == 0.0) {
            // theta'' = -b*K0*phi in both systems when theta' = 0, so the
            // ambiguous slope never enters the tie-break
            dtheta = rhs.sign * (-params->b_k0() * pd_value(y[0], params->slope_k()));
        }
        const bool on_upper = std::abs(y[0] - region.hi) <= kBreakpointTol;
        const bool on_lower = std::abs(y[0] - region.lo) <= kBreakpointTol;
        if (on_upper && dtheta > 0.0)
            region = region_by_index(region.index + 1, params->slope_k());
        else if (on_lower && dtheta < 0.0)
            region = region_by_index(region.index - 1, params->slope_k());
    }

    double initial_step(double remaining) const {
        const double sc0 = opts.abs_tol + opts.rel_tol * std::abs(y[0]);
        const double sc1 = opts.abs_tol + opts.rel_tol * std::abs(y[1]);
        const double d0 = std::hypot(y[0] / sc0, y[1] / sc1);
        const double d1 = std::hypot(f[0] / sc0, f[1] / sc1);
        double h = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-6;
        return std::min({h, opts.max_step, remaining});
    }
};

} // namespace

Trajectory integrate(SystemKind system, State state0, const LoopParameters& params,
                     const IntegratorOptions& opts, Direction direction,
                     const StopSpec& stop, double t0) {
    if (!(opts.rel_tol > 0) || !(opts.abs_tol > 0) || !(opts.max_step > 0) ||
        !(opts.event_tol > 0))
        throw std::invalid_argument("IntegratorOptions: tolerances must be > 0");
    if (opts.max_time && !(*opts.max_time > 0))
        throw std::invalid_argument("IntegratorOptions: max_time must be > 0");
    if (!std::isfinite(state0[0]) || !std::isfinite(state0[1]))
        throw std::invalid_argument("integrate: initial state must be finite");

    const double sign = (direction == Direction::Forward) ? 1.0 : -1.0;
    const double horizon = opts.max_time.value_or(default_sim_time(params));

    Stepper st;
    st.rhs = {system, &params, sign};
    st.params = &params;
    st.opts = opts;
    st.y = state0;
    st.assign_initial_region();
    st.f = st.rhs(st.region, st.y);

    Trajectory traj;
    traj.system = system;
    traj.reason = StopReason::TimeLimit;

    int dwell = 0;
    auto record = [&](const State& y, const State& f_internal) {
        TrajectorySample smp;
        smp.t = t0 + sign * st.s;
        smp.state = y;
        smp.deriv = {sign * f_internal[0], sign * f_internal[1]};
        traj.samples.push_back(smp);
        if (stop.converged && stop.converged(traj.samples.back())) {
            if (++dwell >= stop.dwell_steps) return true;
        } else {
            dwell = 0;
        }
        return false;
    };

    if (record(st.y, st.f)) {
        traj.reason = StopReason::Converged;
        return traj;
    }

    double h = st.initial_step(horizon);
    const double h_floor = 1e-14;

    while (st.s < horizon) {
        const double remaining = horizon - st.s;
        if (remaining <= h_floor * std::max(1.0, st.s)) break; // horizon reached
        h = std::min({h, st.opts.max_step, remaining});
        if (h < h_floor * std::max(1.0, st.s)) {
            traj.reason = StopReason::StepUnderflow;
            return traj;
        }

        StepOutcome trial = rk_step(st.rhs, st.region, st.y, st.f, h, st.opts);
        if (!std::isfinite(trial.err) || trial.err > 1.0) {
            const double fac = std::isfinite(trial.err)
                                   ? std::max(0.2, 0.9 * std::pow(trial.err, -0.2))
                                   : 0.2;
            h *= std::min(fac, 0.9);
            continue;
        }

        // probe points for level crossings: step end plus the interior
        // extrema of the Hermite interpolant (catches out-and-back motion)
        const double th0 = st.y[0];
        const double th1 = trial.y[0];
        double xs[2];
        const int nx =
            hermite_extrema(th0, st.f[0], th1, trial.f[0], h, xs);

        auto probe_theta = [&](double xi) {
            return rk_step(st.rhs, st.region, st.y, st.f, xi * h, st.opts).y[0];
        };

        bool have_crossing = false;
        Crossing first{};
        auto consider = [&](double level, int stop_index) {
            const double g0 = th0 - level;
            if (g0 == 0.0) return; // starting exactly on it (fresh kink snap)
            double hb = -1.0;
            if ((g0 < 0.0) != (th1 - level < 0.0)) {
                hb = h;
            } else {
                for (int i = 0; i < nx; ++i) {
                    const double gx = probe_theta(xs[i]) - level;
                    if (gx != 0.0 && (g0 < 0.0) != (gx < 0.0)) {
                        hb = xs[i] * h;
                        break;
                    }
                }
            }
            if (hb <= 0.0) return;
            Crossing c = locate_crossing(st.rhs, st.region, st.y, st.f, 0.0, hb, level,
                                         st.opts);
            c.stop_index = stop_index;
            if (!have_crossing || c.h < first.h) {
                first = c;
                have_crossing = true;
            }
        };

        for (std::size_t i = 0; i < stop.theta_levels.size(); ++i)
            consider(stop.theta_levels[i], static_cast<int>(i));
        consider(st.region.lo, -1);
        consider(st.region.hi, -1);

        if (have_crossing) {
            st.s += first.h;
            st.y = first.y;
            st.y[0] = first.level; // snap onto the located surface
            if (first.stop_index >= 0) {
                st.f = st.rhs(st.region, st.y);
                record(st.y, st.f);
                traj.reason = StopReason::EventHit;
                traj.event_index = first.stop_index;
                return traj;
            }
            st.region = region_by_index(st.region.index + (first.upward ? +1 : -1),
                                        params.slope_k());
            st.f = st.rhs(st.region, st.y);
            if (record(st.y, st.f)) {
                traj.reason = StopReason::Converged;
                return traj;
            }
            continue; // keep the current h
        }

        // tangential re-entry guard: a step that starts on a region bound and
        // ends outside without a detected crossing means the motion leans
        // into the neighbouring piece; switch and retry
        if (th1 < st.region.lo - st.opts.event_tol ||
            th1 > st.region.hi + st.opts.event_tol) {
            const bool up = th1 > st.region.hi;
            st.region =
                region_by_index(st.region.index + (up ? +1 : -1), params.slope_k());
            st.f = st.rhs(st.region, st.y);
            continue;
        }

        st.s += h;
        st.y = trial.y;
        st.f = trial.f;
        if (record(st.y, st.f)) {
            traj.reason = StopReason::Converged;
            return traj;
        }
        const double fac =
            (trial.err == 0.0) ? 5.0
                               : std::clamp(0.9 * std::pow(trial.err, -0.2), 0.2, 5.0);
        h *= fac;
    }

    traj.reason = StopReason::TimeLimit;
    return traj;
}

Trajectory integrate(const PhaseState& s0, const LoopParameters& params,
                     const IntegratorOptions& opts, Direction direction,
                     const StopSpec& stop) {
    return integrate(SystemKind::Phase, {s0.theta_delta, s0.x}, params, opts, direction,
                     stop);
}

Trajectory integrate(const EquivState& s0, const LoopParameters& params,
                     const IntegratorOptions& opts, Direction direction,
                     const StopSpec& stop) {
    return integrate(SystemKind::Equiv, {s0.theta_delta, s0.y}, params, opts, direction,
                     stop);
}

std::array<double, 2> eval_state(const Trajectory& traj, double t) {
    const auto& sm = traj.samples;
    if (sm.empty()) throw std::invalid_argument("eval_state: empty trajectory");
    if (sm.size() == 1) return sm.front().state;
    const bool increasing = sm.back().t >= sm.front().t;

    auto cmp = [&](const TrajectorySample& a, double val) {
        return increasing ? a.t < val : a.t > val;
    };
    auto it = std::lower_bound(sm.begin(), sm.end(), t, cmp);
    if (it == sm.begin()) ++it;
    if (it == sm.end()) --it;
    const TrajectorySample& s1 = *(it - 1);
    const TrajectorySample& s2 = *it;
    const double dt = s2.t - s1.t;
    if (dt == 0.0) return s1.state;
    const double xi = std::clamp((t - s1.t) / dt, 0.0, 1.0);

    std::array<double, 2> out{};
    for (int i = 0; i < 2; ++i) {
        const double h00 = (1 + 2 * xi) * (1 - xi) * (1 - xi);
        const double h10 = xi * (1 - xi) * (1 - xi);
        const double h01 = xi * xi * (3 - 2 * xi);
        const double h11 = xi * xi * (xi - 1);
        out[i] = h00 * s1.state[i] + h10 * dt * s1.deriv[i] + h01 * s2.state[i] +
                 h11 * dt * s2.deriv[i];
    }
    return out;
}

} // namespace pll
