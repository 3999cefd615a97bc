#pragma once

#include <optional>

namespace pll {

/// Absolute tolerance (rad, on the wrapped coordinate) inside which a phase
/// counts as sitting on a zigzag kink.
inline constexpr double kBreakpointTol = 1e-12;

/// Wrap an unwrapped phase into (-pi, pi].
double wrap_phase(double theta);

/// 2*pi-periodic zigzag characteristic with rising slope k on [-1/k, 1/k]
/// and falling slope -k/(pi*k - 1) in between; range [-1, 1]. Continuous,
/// so kinks return the common limit value. k = 2/pi gives the triangular
/// characteristic of a multiplier phase detector with impulse signals.
double pd_value(double theta, double slope_k);

/// Slope of the zigzag at theta: k on the open rising branch, -k/(pi*k - 1)
/// on the open falling branch. Within kBreakpointTol of a kink there is no
/// two-sided derivative and nullopt is returned; integrators must treat the
/// kink as an event surface instead of picking a side silently.
std::optional<double> pd_slope(double theta, double slope_k);

/// One affine piece of the zigzag in unwrapped phase. Index 2j is the rising
/// piece of the cell centered at 2*pi*j, index 2j+1 the falling piece to its
/// right; consecutive indices share a kink. value_at/slope extend the piece
/// affinely beyond its bounds, which is what a piecewise integrator needs to
/// step across a kink and locate it afterwards.
struct ZigzagRegion {
    long index;
    double lo;
    double hi;
    double slope;
    double value_offset; // value_at(theta) = slope * theta + value_offset

    double value_at(double theta) const { return slope * theta + value_offset; }
};

/// Region containing theta; at a kink the half-open convention [lo, hi)
/// assigns the piece on the right.
ZigzagRegion region_at(double theta, double slope_k);

ZigzagRegion region_by_index(long index, double slope_k);

} // namespace pll
