// Command-line front end: single-point lock-in analyses, diagram sweeps,
// trajectory/separatrix exports, the frequency-step lock check, and the
// waveform-level validation runs. Exit codes: 0 success, 2 invalid
// arguments, 3 numerical failure, 4 I/O failure.

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pll/equilibria.hpp"
#include "pll/integrate.hpp"
#include "pll/lockin_analytic.hpp"
#include "pll/lockin_check.hpp"
#include "pll/loop_params.hpp"
#include "pll/report.hpp"
#include "pll/separatrix.hpp"
#include "pll/signal_sim.hpp"
#include "pll/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct LoopFlags {
    double tau1 = 1.0;
    double tau2 = 1.0;
    double k0 = 1.0;
    double slope_k = pll::kTriangularSlope;
    double omega_delta = 0.0;
};

void add_loop_flags(CLI::App* cmd, LoopFlags& f) {
    cmd->add_option("--tau1", f.tau1, "filter time constant tau1, s");
    cmd->add_option("--tau2", f.tau2, "filter time constant tau2, s");
    cmd->add_option("--k0", f.k0, "loop gain K0 = Kv*Kd, 1/s");
    cmd->add_option("--slope-k", f.slope_k, "PD zigzag rising slope (> 1/pi)");
    cmd->add_option("--omega-delta", f.omega_delta,
                    "frequency deviation omega1 - omega2_free, rad/s");
}

pll::LoopParameters make_params(const LoopFlags& f) {
    return {f.tau1, f.tau2, f.k0, f.slope_k, f.omega_delta};
}

// data goes to --out when given, to stdout otherwise
int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return kExitOk;
    }
    std::ofstream os(path);
    if (!os) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return kExitIo;
    }
    fn(os);
    os.flush();
    if (!os) {
        std::cerr << "error: failed writing output file: " << path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

std::vector<double> parse_x_spec(const std::string& spec) {
    // min:max:count, log-spaced
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' ||
        !is.eof())
        throw CLI::ValidationError("--x", "expected min:max:count");
    return pll::log_space(lo, hi, count);
}

void write_trajectory_csv(std::ostream& os, const pll::Trajectory& traj) {
    const bool phase = traj.system == pll::SystemKind::Phase;
    os << (phase ? "t,theta_delta,x\n" : "t,theta_delta,y\n");
    for (const auto& s : traj.samples)
        os << pll::format_double(s.t) << ',' << pll::format_double(s.state[0]) << ','
           << pll::format_double(s.state[1]) << '\n';
}

std::string eigensystem_json(const pll::EigenSystem& e) {
    auto cpx = [](std::complex<double> z) {
        return "[" + pll::format_double(z.real()) + "," + pll::format_double(z.imag()) +
               "]";
    };
    return "{\"lambda1\":" + cpx(e.lambda1) + ",\"lambda2\":" + cpx(e.lambda2) +
           ",\"v1\":[" + cpx(e.v1[0]) + "," + cpx(e.v1[1]) + "],\"v2\":[" +
           cpx(e.v2[0]) + "," + cpx(e.v2[1]) + "]}";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lock-in range of the classical PLL with impulse signals and an "
                 "active PI filter"};
    app.require_subcommand(1);

    // ---- lockin ----
    auto* lockin = app.add_subcommand(
        "lockin", "compute the lock-in frequency at one parameter point");
    LoopFlags lf_lockin;
    add_loop_flags(lockin, lf_lockin);
    std::string lockin_method = "both";
    bool lockin_json = false, lockin_det = false;
    std::string lockin_out;
    lockin->add_option("--method", lockin_method, "analytic|numeric|both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    lockin->add_flag("--json", lockin_json, "emit a JSON report");
    lockin->add_flag("--deterministic", lockin_det, "suppress the timestamp field");
    lockin->add_option("--out", lockin_out, "write the report to a file");
    lockin->set_config("--config");

    // ---- sweep ----
    auto* sweep = app.add_subcommand(
        "sweep", "lock-in diagram sweep over K0/tau1 for a set of tau2");
    std::string sweep_x = "0.1:10000:50";
    std::vector<double> sweep_tau2;
    std::string sweep_method = "both", sweep_out;
    double sweep_slope = pll::kTriangularSlope, sweep_tau1 = 1.0;
    int sweep_jobs = 1;
    bool sweep_det = false;
    sweep->add_option("--x", sweep_x, "K0/tau1 grid as min:max:count (log-spaced)");
    sweep->add_option("--tau2", sweep_tau2, "tau2 values, s")->delimiter(',');
    sweep->add_option("--slope-k", sweep_slope, "PD zigzag rising slope");
    sweep->add_option("--tau1", sweep_tau1,
                      "tau1, s (results depend only on K0/tau1 and tau2; kept at 1)");
    sweep->add_option("--method", sweep_method, "analytic|numeric|both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    sweep->add_option("--jobs", sweep_jobs, "grid points evaluated concurrently");
    sweep->add_flag("--deterministic", sweep_det,
                    "byte-stable output (no timestamp anywhere)");
    sweep->add_option("--out", sweep_out, "output CSV path");
    sweep->set_config("--config");

    // ---- simulate ----
    auto* simulate = app.add_subcommand(
        "simulate", "integrate the phase-plane model and export the trajectory");
    LoopFlags lf_sim;
    add_loop_flags(simulate, lf_sim);
    std::string sim_system = "phase", sim_out;
    double sim_theta0 = 0.0, sim_x0 = 0.0, sim_y0 = 0.0, sim_tend = 10.0;
    bool sim_backward = false;
    simulate->add_option("--system", sim_system, "phase|equiv")
        ->check(CLI::IsMember({"phase", "equiv"}));
    simulate->add_option("--theta0", sim_theta0, "initial phase error, rad");
    auto* opt_x0 = simulate->add_option("--x0", sim_x0, "initial filter state (phase system)");
    auto* opt_y0 = simulate->add_option("--y0", sim_y0, "initial rate, rad/s (equiv system)");
    simulate->add_option("--t-end", sim_tend, "integration horizon, s");
    simulate->add_flag("--backward", sim_backward, "integrate backward in time");
    simulate->add_option("--out", sim_out, "output CSV path");
    simulate->set_config("--config");

    // ---- check-lockin ----
    auto* check = app.add_subcommand(
        "check-lockin", "frequency-step scenario: does a step to +omega re-lock "
                        "without a cycle slip?");
    LoopFlags lf_check;
    add_loop_flags(check, lf_check);
    double check_omega = 0.0, check_max_time = 0.0;
    check->add_option("--omega", check_omega, "deviation step magnitude, rad/s")
        ->required();
    check->add_option("--max-time", check_max_time,
                      "simulation budget, s (default: 1000 slow eigen-times)");
    check->set_config("--config");

    // ---- trace-separatrix ----
    auto* trace = app.add_subcommand(
        "trace-separatrix", "trace the saddle separatrix of the equivalent system");
    LoopFlags lf_trace;
    add_loop_flags(trace, lf_trace);
    double trace_eps = 0.0;
    std::string trace_out;
    bool trace_json = false, trace_det = false;
    trace->add_option("--epsilon", trace_eps, "seed offset from the saddle (<= 1e-6)");
    trace->add_option("--out", trace_out, "trajectory CSV path");
    trace->add_flag("--json", trace_json, "emit a JSON summary to stdout");
    trace->add_flag("--deterministic", trace_det, "suppress the timestamp field");
    trace->set_config("--config");

    // ---- signal-sim ----
    auto* sig = app.add_subcommand(
        "signal-sim", "simulate the waveform-level (square-wave) model");
    pll::SignalParams sp;
    double sig_tend = 10.0, sig_dt = 0.0;
    std::string sig_out;
    sig->add_option("--omega1", sp.omega1, "reference frequency, rad/s")->required();
    sig->add_option("--omega2-free", sp.omega2_free, "VCO free-running frequency, rad/s");
    sig->add_option("--kv", sp.kv, "VCO gain")->required();
    sig->add_option("--kd", sp.kd, "PD gain");
    sig->add_option("--tau1", sp.tau1, "filter time constant tau1, s")->required();
    sig->add_option("--tau2", sp.tau2, "filter time constant tau2, s")->required();
    sig->add_option("--theta1-0", sp.theta1_0, "initial reference phase, rad");
    sig->add_option("--theta2-0", sp.theta2_0, "initial VCO phase, rad");
    sig->add_option("--x0", sp.x0, "initial filter state");
    sig->add_option("--t-end", sig_tend, "horizon, s");
    sig->add_option("--dt", sig_dt, "base step, s (default 2*pi/(200*omega1))");
    sig->add_option("--out", sig_out, "output CSV path");
    sig->set_config("--config");

    // ---- compare-models ----
    auto* cmp = app.add_subcommand(
        "compare-models", "waveform model vs phase model from matched initial "
                          "conditions");
    pll::SignalParams cp;
    double cmp_tend = 10.0;
    std::string cmp_out;
    bool cmp_json = false;
    cmp->add_option("--omega1", cp.omega1, "reference frequency, rad/s")->required();
    cmp->add_option("--omega2-free", cp.omega2_free, "VCO free-running frequency, rad/s");
    cmp->add_option("--kv", cp.kv, "VCO gain")->required();
    cmp->add_option("--kd", cp.kd, "PD gain");
    cmp->add_option("--tau1", cp.tau1, "filter time constant tau1, s")->required();
    cmp->add_option("--tau2", cp.tau2, "filter time constant tau2, s")->required();
    cmp->add_option("--theta1-0", cp.theta1_0, "initial reference phase, rad");
    cmp->add_option("--theta2-0", cp.theta2_0, "initial VCO phase, rad");
    cmp->add_option("--x0", cp.x0, "initial filter state");
    cmp->add_option("--t-end", cmp_tend, "horizon, s");
    cmp->add_option("--out", cmp_out, "gap-curve CSV path");
    cmp->add_flag("--json", cmp_json, "emit a JSON summary to stdout");
    cmp->set_config("--config");

    // ---- equilibria ----
    auto* eq = app.add_subcommand("equilibria",
                                  "locate and classify the two equilibria");
    LoopFlags lf_eq;
    add_loop_flags(eq, lf_eq);
    bool eq_json = false;
    eq->add_flag("--json", eq_json, "emit JSON");
    eq->set_config("--config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (lockin->parsed()) {
            const auto p = make_params(lf_lockin);
            std::vector<pll::LockInResult> results;
            if (lockin_method != "numeric") results.push_back(pll::lock_in_analytic(p));
            if (lockin_method != "analytic") results.push_back(pll::lock_in_numeric(p));
            return with_output(lockin_out, [&](std::ostream& os) {
                if (lockin_json) {
                    os << pll::lockin_report_json(p, results, lockin_det) << "\n";
                } else {
                    os << "case: " << pll::to_string(results.front().case_tag) << "\n";
                    for (const auto& r : results)
                        os << pll::to_string(r.method)
                           << ": omega_l = " << pll::format_double(r.omega_l)
                           << "  S'(0) = " << pll::format_double(r.s_prime_at_zero)
                           << "\n";
                }
            });
        }

        if (sweep->parsed()) {
            if (sweep_tau2.empty()) {
                std::cerr << "error: sweep requires a non-empty --tau2 list\n";
                return kExitBadArgs;
            }
            pll::SweepSpec spec;
            spec.x_values = parse_x_spec(sweep_x);
            spec.tau2_set = sweep_tau2;
            spec.slope_k = sweep_slope;
            spec.tau1 = sweep_tau1;
            spec.analytic = sweep_method != "numeric";
            spec.numeric = sweep_method != "analytic";
            spec.jobs = sweep_jobs;
            const auto rows = pll::run_sweep(spec);
            (void)sweep_det; // sweep CSV carries no timestamp to suppress
            return with_output(sweep_out,
                               [&](std::ostream& os) { pll::write_sweep_csv(os, rows); });
        }

        if (simulate->parsed()) {
            const auto p = make_params(lf_sim);
            pll::IntegratorOptions opts;
            opts.max_time = sim_tend;
            const auto dir =
                sim_backward ? pll::Direction::Backward : pll::Direction::Forward;
            pll::Trajectory traj;
            if (sim_system == "phase") {
                if (opt_y0->count() > 0) {
                    std::cerr << "error: --y0 applies to --system equiv\n";
                    return kExitBadArgs;
                }
                traj = pll::integrate(pll::PhaseState{sim_theta0, sim_x0}, p, opts, dir,
                                      {});
            } else {
                if (opt_x0->count() > 0) {
                    std::cerr << "error: --x0 applies to --system phase\n";
                    return kExitBadArgs;
                }
                traj = pll::integrate(pll::EquivState{sim_theta0, sim_y0}, p, opts, dir,
                                      {});
            }
            if (traj.reason == pll::StopReason::StepUnderflow) {
                std::cerr << "error: integrator step size underflow\n";
                return kExitNumerical;
            }
            return with_output(sim_out,
                               [&](std::ostream& os) { write_trajectory_csv(os, traj); });
        }

        if (check->parsed()) {
            const auto p = make_params(lf_check);
            pll::IntegratorOptions opts;
            if (check_max_time > 0.0) opts.max_time = check_max_time;
            const auto rep = pll::check_lock_in(p, check_omega, opts);
            std::cout << pll::to_string(rep.outcome)
                      << "  max_excursion = " << pll::format_double(rep.max_excursion)
                      << " rad  sim_time = " << pll::format_double(rep.sim_time)
                      << " s\n";
            return rep.outcome == pll::LockOutcome::Undetermined ? kExitNumerical
                                                                 : kExitOk;
        }

        if (trace->parsed()) {
            const auto p = make_params(lf_trace);
            const auto tr = (trace_eps > 0.0)
                                ? pll::trace_separatrix(p, trace_eps)
                                : pll::trace_separatrix(p);
            if (!trace_out.empty()) {
                const int rc = with_output(trace_out, [&](std::ostream& os) {
                    write_trajectory_csv(os, tr.trajectory);
                });
                if (rc != kExitOk) return rc;
            }
            if (trace_json) {
                std::cout << "{\"epsilon\":" << pll::format_double(tr.seed_epsilon)
                          << ",\"y_at_break\":" << pll::format_double(tr.y_at_break)
                          << ",\"s_prime_break_closed_form\":"
                          << pll::format_double(pll::separatrix_slope_at_break(p))
                          << ",\"y_at_zero\":" << pll::format_double(tr.y_at_zero)
                          << ",\"omega_l\":" << pll::format_double(tr.y_at_zero / 2.0)
                          << ",\"error_estimate\":"
                          << pll::format_double(tr.error_estimate) << "}\n";
            } else {
                std::cout << "S'(1/k) = " << pll::format_double(tr.y_at_break)
                          << "  S'(0) = " << pll::format_double(tr.y_at_zero)
                          << "  omega_l = " << pll::format_double(tr.y_at_zero / 2.0)
                          << "  err_estimate = "
                          << pll::format_double(tr.error_estimate) << "\n";
            }
            return kExitOk;
        }

        if (sig->parsed()) {
            const double dt =
                sig_dt > 0.0 ? sig_dt : 2.0 * std::numbers::pi / (200.0 * sp.omega1);
            const auto traj = pll::simulate_signal_space(sp, sig_tend, dt);
            return with_output(sig_out, [&](std::ostream& os) {
                os << "t,theta1,theta2,x\n";
                for (const auto& s : traj.samples)
                    os << pll::format_double(s.t) << ',' << pll::format_double(s.theta1)
                       << ',' << pll::format_double(s.theta2) << ','
                       << pll::format_double(s.x) << '\n';
            });
        }

        if (cmp->parsed()) {
            const auto rep = pll::compare_models(cp, cmp_tend);
            if (!cmp_out.empty()) {
                const int rc = with_output(cmp_out, [&](std::ostream& os) {
                    os << "t,gap\n";
                    for (const auto& [t, g] : rep.gap_curve)
                        os << pll::format_double(t) << ',' << pll::format_double(g)
                           << '\n';
                });
                if (rc != kExitOk) return rc;
            }
            if (cmp_json) {
                std::cout << "{\"sup_phase_gap\":"
                          << pll::format_double(rep.sup_phase_gap)
                          << ",\"scale_separation_ok\":"
                          << (rep.scale_separation_ok ? "true" : "false") << "}\n";
            } else {
                std::cout << "sup phase gap = " << pll::format_double(rep.sup_phase_gap)
                          << " rad ("
                          << (rep.scale_separation_ok ? "scale separation >= 100x"
                                                      : "WARNING: scale separation < "
                                                        "100x, comparison advisory")
                          << ")\n";
            }
            return kExitOk;
        }

        if (eq->parsed()) {
            const auto p = make_params(lf_eq);
            const auto eqs = pll::find_equilibria(p);
            const auto stable = pll::stable_eigensystem(p);
            const auto saddle = pll::saddle_eigensystem(p);
            if (eq_json) {
                std::cout << "{\"equilibria\":[";
                for (std::size_t i = 0; i < eqs.size(); ++i) {
                    const auto& e = eqs[i];
                    std::cout << "{\"theta_eq\":" << pll::format_double(e.theta_eq)
                              << ",\"x_eq\":" << pll::format_double(e.x_eq)
                              << ",\"y_eq\":" << pll::format_double(e.y_eq)
                              << ",\"kind\":\"" << pll::to_string(e.kind) << "\"}"
                              << (i + 1 < eqs.size() ? "," : "");
                }
                std::cout << "],\"stable_eigensystem\":" << eigensystem_json(stable)
                          << ",\"saddle_eigensystem\":" << eigensystem_json(saddle)
                          << "}\n";
            } else {
                for (const auto& e : eqs)
                    std::cout << pll::to_string(e.kind) << " at theta = "
                              << pll::format_double(e.theta_eq)
                              << ", x_eq = " << pll::format_double(e.x_eq) << "\n";
                auto show = [](const char* name, const pll::EigenSystem& es) {
                    std::cout << name << ": lambda1 = (" << es.lambda1.real() << ", "
                              << es.lambda1.imag() << "i), lambda2 = ("
                              << es.lambda2.real() << ", " << es.lambda2.imag()
                              << "i)\n";
                };
                show("stable", stable);
                show("saddle", saddle);
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const pll::NoCrossingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
