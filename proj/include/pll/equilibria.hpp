#pragma once

#include <array>
#include <complex>

#include "pll/loop_params.hpp"

namespace pll {

enum class EquilibriumKind { StableNode, StableDegenerateNode, StableFocus, Saddle };

/// Type of the stable equilibrium, decided by the sign of
/// (a*K0)^2 - 4*b*K0/k.
enum class StableCase { Node, DegenerateNode, Focus };

const char* to_string(EquilibriumKind k);
const char* to_string(StableCase c);

/// Fixed point of both phase-plane systems; theta_eq is 0 (stable) or pi
/// (saddle) modulo 2*pi, x_eq = omega_delta_free*tau1/K0, y_eq = 0.
struct Equilibrium {
    double theta_eq;
    double x_eq;
    double y_eq;
    EquilibriumKind kind;
};

/// Eigenvalues and eigenvectors of the Jacobian at a fixed point, ordered
/// with Re(lambda1) >= Re(lambda2). Real eigenvectors follow the saddle
/// convention (second component 1) or the stable-node convention (first
/// component 1); a complex pair stores vectors whose real/imaginary parts
/// are the usual U, V decomposition. For a degenerate (double) eigenvalue
/// both v1 and v2 hold the single eigenvector.
struct EigenSystem {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    std::array<std::complex<double>, 2> v1;
    std::array<std::complex<double>, 2> v2;
};

/// (a*K0)^2 - 4*b*K0/k, the stable-case discriminant.
double stable_discriminant(const LoopParameters& p);

/// Relative degeneracy band: |discriminant| <= band counts as the
/// degenerate-node case, making the classifier total.
double degeneracy_band(const LoopParameters& p);

StableCase classify_stable(const LoopParameters& p);

/// The two equilibria per 2*pi period: the stable one at theta = 0 first,
/// the saddle at theta = pi second.
std::array<Equilibrium, 2> find_equilibria(const LoopParameters& p);

/// Eigensystem of the stable equilibrium (rising-branch linearization,
/// characteristic polynomial lambda^2 + a*K0*k*lambda + b*K0*k).
EigenSystem stable_eigensystem(const LoopParameters& p);

/// Eigensystem of the saddle (falling-branch linearization, characteristic
/// polynomial lambda^2 - a*K0*k/(pi*k-1)*lambda - b*K0*k/(pi*k-1));
/// lambda1 > 0 > lambda2.
EigenSystem saddle_eigensystem(const LoopParameters& p);

} // namespace pll
