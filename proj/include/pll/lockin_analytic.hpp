#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "pll/equilibria.hpp"
#include "pll/loop_params.hpp"

namespace pll {

enum class LockInMethod { Analytic, Numeric };

const char* to_string(LockInMethod m);

/// Coefficients of the Cauchy problem that continues the separatrix from the
/// kink at theta = 1/k down to theta = 0 inside the rising-branch interval,
/// plus the crossing time t0 (<= 0) and the governing stable eigenvalue.
struct CaseCoefficients {
    StableCase case_tag;
    double c1;
    double c2;
    double t0;
    std::complex<double> lambda_s;
};

/// A computed lock-in frequency with its provenance: which stable case the
/// parameters fall in, which method produced it, the separatrix value
/// S'(theta_eq^s) it halves, and intermediate diagnostics.
struct LockInResult {
    double omega_l = 0.0;
    StableCase case_tag = StableCase::Focus;
    LockInMethod method = LockInMethod::Analytic;
    double s_prime_at_zero = 0.0;
    std::map<std::string, double> diagnostics;
};

/// Raised when the Cauchy coefficients violate their sign/range invariants,
/// which would mean a transcription or conditioning bug rather than bad user
/// input.
struct CaseInvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Separatrix value where it leaves the saddle's linear interval,
/// S'(1/k) = (sqrt((a*K0)^2 + 4*b*K0*(pi - 1/k)) - a*K0)/2. Inside the
/// falling-branch interval the dynamics are affine, so the saddle
/// eigendirection is the exact separatrix and this value is closed-form.
double separatrix_slope_at_break(const LoopParameters& p);

/// Separatrix value at the stable equilibrium, S'(theta_eq^s), from the
/// per-case Cauchy solutions, together with the coefficients used.
std::pair<double, CaseCoefficients> s_prime_at_target(const LoopParameters& p);

/// Closed-form lock-in frequency omega_l = S'(theta_eq^s)/2 for a general
/// zigzag slope.
LockInResult lock_in_analytic(const LoopParameters& p);

/// The published triangular (k = 2/pi) formulas, transcribed from their
/// specialized form rather than derived from the general path. Kept as an
/// independent route; the general path evaluated at k = 2/pi must agree.
double lock_in_triangular(double a_k0, double b_k0);

} // namespace pll
