#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <array>
#include <complex>
#include <random>

namespace oracles {

struct Eig2 {
    std::complex<double> l1, l2;
};

// eigenvalues of [[a11, a12], [a21, a22]] straight from the characteristic
// quadratic
inline Eig2 eig2(double a11, double a12, double a21, double a22) {
    const std::complex<double> tr = a11 + a22;
    const std::complex<double> det = a11 * a22 - a12 * a21;
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// exact solution of xdot = A x at time t for distinct eigenvalues, via the
// spectral decomposition in complex arithmetic
inline std::array<double, 2> linear_solution(const std::array<std::array<double, 2>, 2>& A,
                                             const std::array<double, 2>& x0, double t) {
    const Eig2 e = eig2(A[0][0], A[0][1], A[1][0], A[1][1]);
    const std::complex<double> v1x = A[0][1], v1y = e.l1 - A[0][0];
    const std::complex<double> v2x = A[0][1], v2y = e.l2 - A[0][0];
    const std::complex<double> det = v1x * v2y - v2x * v1y;
    const std::complex<double> c1 = (x0[0] * v2y - v2x * x0[1]) / det;
    const std::complex<double> c2 = (v1x * x0[1] - x0[0] * v1y) / det;
    const std::complex<double> e1 = c1 * std::exp(e.l1 * t);
    const std::complex<double> e2 = c2 * std::exp(e.l2 * t);
    return {(e1 * v1x + e2 * v2x).real(), (e1 * v1y + e2 * v2y).real()};
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

} // namespace oracles
