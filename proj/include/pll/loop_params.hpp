#pragma once

#include <numbers>
#include <stdexcept>

namespace pll {

/// Rising slope of the triangular characteristic produced by impulse signals.
inline constexpr double kTriangularSlope = 2.0 / std::numbers::pi;

/// Constants of the loop: active PI filter (1 + tau2*s)/(tau1*s), loop gain
/// k0 = Kv*Kd, zigzag phase-detector slope, and the free-running frequency
/// deviation omega1 - omega2_free. Immutable after construction; the derived
/// ratios a = tau2/tau1 and b = 1/tau1 are always recomputed, never stored.
class LoopParameters {
public:
    LoopParameters(double tau1, double tau2, double k0, double slope_k,
                   double omega_delta_free = 0.0)
        : tau1_(tau1), tau2_(tau2), k0_(k0), slope_k_(slope_k),
          omega_delta_free_(omega_delta_free) {
        if (!(tau1 > 0.0)) throw std::invalid_argument("LoopParameters: tau1 must be > 0");
        if (!(tau2 > 0.0)) throw std::invalid_argument("LoopParameters: tau2 must be > 0");
        if (!(k0 > 0.0)) throw std::invalid_argument("LoopParameters: k0 must be > 0");
        if (!(slope_k > 1.0 / std::numbers::pi))
            throw std::invalid_argument("LoopParameters: slope_k must be > 1/pi");
        if (!(omega_delta_free == omega_delta_free))
            throw std::invalid_argument("LoopParameters: omega_delta_free must be finite");
    }

    double tau1() const { return tau1_; }
    double tau2() const { return tau2_; }
    double k0() const { return k0_; }
    double slope_k() const { return slope_k_; }
    double omega_delta_free() const { return omega_delta_free_; }

    double a() const { return tau2_ / tau1_; }
    double b() const { return 1.0 / tau1_; }

    /// a*K0 = K0*tau2/tau1 and b*K0 = K0/tau1, the only parameter groups the
    /// lock-in formulas depend on (besides slope_k).
    double a_k0() const { return a() * k0_; }
    double b_k0() const { return b() * k0_; }

    /// Filter state of the equilibria, x_eq = omega_delta_free*tau1/K0.
    double x_eq() const { return omega_delta_free_ * tau1_ / k0_; }

    /// Same loop with a different frequency deviation.
    LoopParameters with_omega_delta(double omega) const {
        return {tau1_, tau2_, k0_, slope_k_, omega};
    }

private:
    double tau1_;
    double tau2_;
    double k0_;
    double slope_k_;
    double omega_delta_free_;
};

} // namespace pll
