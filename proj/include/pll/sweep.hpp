#pragma once

#include <string>
#include <vector>

#include "pll/lockin_analytic.hpp"
#include "pll/loop_params.hpp"

namespace pll {

/// Lock-in sweep over the two parameter groups the result depends on:
/// K0/tau1 on the x axis, one curve per tau2. tau1 is fixed to 1 s by
/// convention (omega_l is a function of (K0*tau2/tau1, K0/tau1, k) only, so
/// a tau1 sweep would duplicate the diagram).
struct SweepSpec {
    std::vector<double> x_values; // K0/tau1 grid, ascending
    std::vector<double> tau2_set; // s
    double slope_k = kTriangularSlope;
    double tau1 = 1.0;
    bool analytic = true;
    bool numeric = true;
    int jobs = 1;
};

struct SweepRow {
    double k0_over_tau1 = 0.0;
    double tau2 = 0.0;
    double k = 0.0;
    LockInMethod method = LockInMethod::Analytic;
    double omega_l = 0.0;      // NaN when the point failed
    StableCase case_tag = StableCase::Focus;
    double err_estimate = 0.0; // NaN for analytic rows
    std::string error;         // empty when the point succeeded
};

/// One row per (tau2, x, method), in that (deterministic) order; failures
/// are recorded in the row's error field and never abort the sweep. Grid
/// points run concurrently when spec.jobs > 1.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// count points, log-spaced over [lo, hi] inclusive.
std::vector<double> log_space(double lo, double hi, int count);

} // namespace pll
