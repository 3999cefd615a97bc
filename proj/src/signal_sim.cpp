#include "pll/signal_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pll/integrate.hpp"

namespace pll {

namespace {

constexpr double kPi = std::numbers::pi;

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// running state of the closed-form sub-integration
struct WaveState {
    double t;
    double theta2;
    double x;
};

struct WaveStepper {
    const SignalParams* p;

    double theta1(double t) const { return p->theta1_0 + p->omega1 * t; }

    double theta2_rate(const WaveState& s, int c) const {
        return p->omega2_free +
               p->kv * (s.x / p->tau1 + p->tau2 / p->tau1 * p->kd * c);
    }

    // exact advance while the multiplier output c is constant
    void advance(WaveState& s, int c, double t_to) const {
        const double d = t_to - s.t;
        s.theta2 += theta2_rate(s, c) * d +
                    p->kv * p->kd * c / (2.0 * p->tau1) * d * d;
        s.x += p->kd * c * d;
        s.t = t_to;
    }

    double theta2_at(const WaveState& s, int c, double t) const {
        const double d = t - s.t;
        return s.theta2 + theta2_rate(s, c) * d +
               p->kv * p->kd * c / (2.0 * p->tau1) * d * d;
    }

    // sign of sin(theta1) on the segment starting at t; the derivative
    // resolves the sign when t sits on a switching instant
    int sin_sign(double t) const {
        const double v = std::sin(theta1(t));
        if (std::abs(v) > 1e-9) return sgn(v);
        return sgn(std::cos(theta1(t)) * p->omega1);
    }

    // sign of cos(theta2) on the segment starting at s.t, given the sign of
    // sin(theta1) there. When theta2 sits exactly on a switching level the
    // crossing direction decides; the rate depends on the multiplier output
    // c = s1*s2 itself, so the self-consistent sign is selected.
    int cos_sign_after(const WaveState& s, int s1) const {
        const double v = std::cos(s.theta2);
        if (std::abs(v) > 1e-9) return sgn(v);
        const double msin = -std::sin(s.theta2);
        for (int s2 : {+1, -1})
            if (sgn(msin * theta2_rate(s, s1 * s2)) == s2) return s2;
        // grazing contact: fall back to the jump-free part of the rate
        return sgn(msin * (p->omega2_free + p->kv * s.x / p->tau1));
    }

    // earliest zero of cos(theta2) in (s.t, t_hi] under constant c, or a
    // negative value when there is none. Monotone pieces of the quadratic
    // phase are split until they span less than pi/2, which leaves at most
    // one switching level per piece.
    double first_cos_crossing(const WaveState& s, int c, int expected_sign,
                              double t_hi, double time_tol) const {
        double pieces[2][2];
        int n_pieces = 0;
        const double accel = p->kv * p->kd * c / p->tau1; // d(theta2_rate)/dt
        double t_vertex = t_hi;
        if (accel != 0.0) {
            const double tv = s.t - theta2_rate(s, c) / accel;
            if (tv > s.t && tv < t_hi) t_vertex = tv;
        }
        pieces[n_pieces][0] = s.t;
        pieces[n_pieces++][1] = t_vertex;
        if (t_vertex < t_hi) {
            pieces[n_pieces][0] = t_vertex;
            pieces[n_pieces++][1] = t_hi;
        }
        for (int i = 0; i < n_pieces; ++i) {
            double lo = pieces[i][0];
            const double piece_end = pieces[i][1];
            while (lo < piece_end) {
                double hi = piece_end;
                // keep the phase span below pi/2 so signs bracket reliably
                while (std::abs(theta2_at(s, c, hi) - theta2_at(s, c, lo)) >
                       kPi / 2.0)
                    hi = lo + (hi - lo) / 2.0;
                const double v_hi = std::cos(theta2_at(s, c, hi));
                const int sign_hi = (std::abs(v_hi) > 1e-9)
                                        ? sgn(v_hi)
                                        : -expected_sign; // landing on a level
                if (sign_hi != expected_sign) {
                    double a = lo, b = hi;
                    while (b - a > time_tol) {
                        const double mid = a + (b - a) / 2.0;
                        if (mid <= a || mid >= b) break;
                        const int sm = sgn(std::cos(theta2_at(s, c, mid)));
                        if (sm == expected_sign || sm == 0)
                            a = mid;
                        else
                            b = mid;
                    }
                    return b;
                }
                lo = hi;
            }
        }
        return -1.0;
    }
};

} // namespace

void SignalParams::validate() const {
    if (!(omega1 > 0.0)) throw std::invalid_argument("SignalParams: omega1 must be > 0");
    if (!(tau1 > 0.0) || !(tau2 > 0.0))
        throw std::invalid_argument("SignalParams: tau1, tau2 must be > 0");
    if (!(kv > 0.0)) throw std::invalid_argument("SignalParams: kv must be > 0");
    if (!(kd > 0.0)) throw std::invalid_argument("SignalParams: kd must be > 0");
}

int multiplier_output(double theta1, double theta2) {
    return sgn(std::sin(theta1)) * sgn(std::cos(theta2));
}

SignalTrajectory simulate_signal_space(const SignalParams& p, double horizon,
                                       double dt) {
    p.validate();
    if (!(horizon > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("simulate_signal_space: horizon and dt must be > 0");
    if (dt > 2.0 * kPi / (200.0 * p.omega1))
        throw std::invalid_argument(
            "simulate_signal_space: dt must be <= 2*pi/(200*omega1)");

    WaveStepper ws{&p};
    WaveState s{0.0, p.theta2_0, p.x0};
    const double time_tol = 1e-12 * dt;

    // switching instants of sin(theta1) are (n*pi - theta1_0)/omega1 for
    // successive integers n; track n to avoid re-detecting the same instant
    long long sin_n =
        static_cast<long long>(std::floor(p.theta1_0 / kPi)) + 1;

    const long n_steps = static_cast<long>(std::ceil(horizon / dt - 1e-9));
    SignalTrajectory traj;
    traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.samples.push_back({0.0, p.theta1_0, s.theta2, s.x});

    for (long i = 1; i <= n_steps; ++i) {
        const double t_grid = std::min(static_cast<double>(i) * dt, horizon);
        while (s.t < t_grid - time_tol) {
            const int s1 = ws.sin_sign(s.t);
            const int s2 = ws.cos_sign_after(s, s1);
            const int c = s1 * s2;
            const double t_sin =
                (static_cast<double>(sin_n) * kPi - p.theta1_0) / p.omega1;
            double seg_end = std::min(t_grid, t_sin);
            const double t_cos = ws.first_cos_crossing(s, c, s2, seg_end, time_tol);
            if (t_cos > 0.0) seg_end = t_cos;
            ws.advance(s, c, seg_end);
            if (seg_end == t_sin) ++sin_n;
        }
        s.t = t_grid;
        traj.samples.push_back({t_grid, ws.theta1(t_grid), s.theta2, s.x});
    }
    return traj;
}

ModelGapReport compare_models(const SignalParams& p, double horizon) {
    p.validate();
    const double dt = 2.0 * kPi / (200.0 * p.omega1);
    SignalTrajectory sig = simulate_signal_space(p, horizon, dt);

    const LoopParameters lp = p.loop_parameters();
    IntegratorOptions opts;
    opts.max_time = horizon;
    const PhaseState start{p.theta1_0 - p.theta2_0, p.x0 / p.kd};
    Trajectory phase = integrate(start, lp, opts, Direction::Forward, StopSpec{});

    ModelGapReport rep;
    rep.scale_separation_ok = p.omega1 >= 100.0 * lp.k0() / lp.tau1();

    const std::size_t n = sig.samples.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 10000);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& smp = sig.samples[i];
        const double theta_sig = smp.theta1 - smp.theta2;
        const double theta_phase = eval_state(phase, smp.t)[0];
        const double gap = std::abs(theta_sig - theta_phase);
        rep.sup_phase_gap = std::max(rep.sup_phase_gap, gap);
        if (i % stride == 0 || i + 1 == n) rep.gap_curve.emplace_back(smp.t, gap);
    }
    return rep;
}

} // namespace pll
