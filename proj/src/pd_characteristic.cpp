#include "pll/pd_characteristic.hpp"

#include <cmath>
#include <numbers>

namespace pll {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_phase(double theta) {
    double u = std::remainder(theta, kTwoPi); // [-pi, pi], ties to even
    if (u <= -std::numbers::pi) u += kTwoPi;
    return u;
}

ZigzagRegion region_by_index(long index, double slope_k) {
    const double inv_k = 1.0 / slope_k;
    // floor division so negative indices map to the right cell
    long j = (index >= 0) ? index / 2 : -((-index + 1) / 2);
    const bool rising = ((index % 2) + 2) % 2 == 0;
    const double center = kTwoPi * static_cast<double>(j);
    ZigzagRegion r;
    r.index = index;
    if (rising) {
        r.lo = center - inv_k;
        r.hi = center + inv_k;
        r.slope = slope_k;
        r.value_offset = -slope_k * center;
    } else {
        r.lo = center + inv_k;
        r.hi = center + kTwoPi - inv_k;
        const double pk1 = std::numbers::pi * slope_k - 1.0;
        r.slope = -slope_k / pk1;
        // phi = (-k*(theta - center) + pi*k) / (pi*k - 1)
        r.value_offset = (slope_k * center + std::numbers::pi * slope_k) / pk1;
    }
    return r;
}

ZigzagRegion region_at(double theta, double slope_k) {
    const double inv_k = 1.0 / slope_k;
    const long j = static_cast<long>(std::nearbyint(theta / kTwoPi));
    const double u = theta - kTwoPi * static_cast<double>(j);
    long index;
    if (u >= -inv_k && u < inv_k) {
        index = 2 * j; // rising piece of cell j
    } else if (u >= inv_k) {
        index = 2 * j + 1; // falling piece to the right
    } else {
        index = 2 * j - 1; // falling piece of cell j-1
    }
    return region_by_index(index, slope_k);
}

double pd_value(double theta, double slope_k) {
    return region_at(theta, slope_k).value_at(theta);
}

std::optional<double> pd_slope(double theta, double slope_k) {
    const double inv_k = 1.0 / slope_k;
    const double u = wrap_phase(theta);
    if (std::abs(std::abs(u) - inv_k) <= kBreakpointTol) return std::nullopt;
    if (std::abs(u) < inv_k) return slope_k;
    return -slope_k / (std::numbers::pi * slope_k - 1.0);
}

} // namespace pll
