#include "pll/phase_model.hpp"

namespace pll {

PhaseDerivative rhs_phase(const PhaseState& s, const LoopParameters& p) {
    const double phi = pd_value(s.theta_delta, p.slope_k());
    return {phi, p.omega_delta_free() - p.b_k0() * (s.x + p.tau2() * phi)};
}

EquivDerivative rhs_equiv(const EquivState& s, const LoopParameters& p) {
    const auto slope = pd_slope(s.theta_delta, p.slope_k());
    if (!slope)
        throw BreakpointError("rhs_equiv: theta_delta is on a zigzag kink");
    const double phi = pd_value(s.theta_delta, p.slope_k());
    return {s.y, -p.a_k0() * (*slope) * s.y - p.b_k0() * phi};
}

EquivState to_equiv(const PhaseState& s, const LoopParameters& p) {
    const double phi = pd_value(s.theta_delta, p.slope_k());
    return {s.theta_delta,
            p.omega_delta_free() - p.b_k0() * (s.x + p.tau2() * phi)};
}

PhaseState to_phase(const EquivState& s, const LoopParameters& p) {
    const double phi = pd_value(s.theta_delta, p.slope_k());
    return {s.theta_delta,
            (p.omega_delta_free() - s.y) / p.b_k0() - p.tau2() * phi};
}

} // namespace pll
