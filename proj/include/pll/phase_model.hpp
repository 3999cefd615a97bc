#pragma once

#include <stdexcept>

#include "pll/loop_params.hpp"
#include "pll/pd_characteristic.hpp"

namespace pll {

/// Phase-plane state of the loop filter model: unwrapped phase error and
/// the (gain-rescaled) filter state.
struct PhaseState {
    double theta_delta;
    double x;
};

/// State of the equivalent system: unwrapped phase error and its rate
/// y = d(theta_delta)/dt. The equivalent dynamics do not depend on
/// omega_delta_free, which is what makes the separatrix computation
/// parameter-shift-free.
struct EquivState {
    double theta_delta;
    double y;
};

struct PhaseDerivative {
    double dx_dt;
    double dtheta_dt;
};

struct EquivDerivative {
    double dtheta_dt;
    double dy_dt;
};

/// Thrown when a rate evaluation lands on a zigzag kink, where the PD slope
/// has no two-sided value. Integrators resolve kinks as event surfaces and
/// never hit this.
struct BreakpointError : std::domain_error {
    using std::domain_error::domain_error;
};

/// dx/dt = phi(theta), dtheta/dt = omega_delta_free - (K0/tau1)(x + tau2*phi(theta)).
PhaseDerivative rhs_phase(const PhaseState& s, const LoopParameters& p);

/// dtheta/dt = y, dy/dt = -(K0*tau2/tau1)*phi'(theta)*y - (K0/tau1)*phi(theta).
/// Throws BreakpointError on a kink.
EquivDerivative rhs_equiv(const EquivState& s, const LoopParameters& p);

/// y = omega_delta_free - (K0/tau1)(x + tau2*phi(theta)).
EquivState to_equiv(const PhaseState& s, const LoopParameters& p);

/// Inverse of to_equiv: x = (omega_delta_free - y)*tau1/K0 - tau2*phi(theta).
PhaseState to_phase(const EquivState& s, const LoopParameters& p);

} // namespace pll
