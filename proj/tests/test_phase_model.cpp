#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "pll/phase_model.hpp"

using namespace pll;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTri = 2.0 / kPi;
} // namespace

TEST_CASE("rhs_phase vanishes at the equilibria", "[model]") {
    const LoopParameters p(0.7, 1.3, 4.2, kTri, 0.9);
    const double x_eq = p.x_eq();
    for (double theta : {0.0, kPi}) {
        const auto d = rhs_phase({theta, x_eq}, p);
        CHECK(d.dx_dt == Approx(0.0).margin(1e-14));
        CHECK(d.dtheta_dt == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("rhs_phase hand-substitution point", "[model]") {
    // tau1 = tau2 = K0 = 1, omega_delta = 0, k = 2/pi, state (pi/2, 0):
    // dx = phi(pi/2) = 1, dtheta = -(1)(0 + 1*1) = -1
    const LoopParameters p(1.0, 1.0, 1.0, kTri, 0.0);
    const auto d = rhs_phase({kPi / 2.0, 0.0}, p);
    CHECK(d.dx_dt == Approx(1.0).margin(1e-14));
    CHECK(d.dtheta_dt == Approx(-1.0).margin(1e-14));
}

TEST_CASE("rhs_equiv hand-substitution point and kink error", "[model]") {
    const LoopParameters p(1.0, 1.0, 1.0, kTri, 0.0);
    CHECK(rhs_equiv({0.0, 0.0}, p).dy_dt == 0.0);
    CHECK(rhs_equiv({kPi, 0.0}, p).dy_dt == Approx(0.0).margin(1e-15));
    // (1, 2): dtheta = 2, dy = -(2/pi)*2 - (2/pi)*1 = -6/pi
    const auto d = rhs_equiv({1.0, 2.0}, p);
    CHECK(d.dtheta_dt == 2.0);
    CHECK(d.dy_dt == Approx(-6.0 / kPi).margin(1e-14));
    CHECK_THROWS_AS(rhs_equiv({kPi / 2.0, 1.0}, p), BreakpointError);
}

TEST_CASE("rhs_equiv does not depend on omega_delta_free", "[model]") {
    const LoopParameters p1(0.5, 2.0, 3.0, 1.1, 0.0);
    const LoopParameters p2 = p1.with_omega_delta(17.0);
    const EquivState s{0.3, -1.2};
    const auto d1 = rhs_equiv(s, p1);
    const auto d2 = rhs_equiv(s, p2);
    CHECK(d1.dtheta_dt == d2.dtheta_dt);
    CHECK(d1.dy_dt == d2.dy_dt);
}

TEST_CASE("state maps invert each other", "[model][property]") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const LoopParameters p(0.8, 1.7, 2.5, kTri, 1.1);

    // equilibrium maps to equilibrium
    const auto eq = to_equiv({0.0, p.x_eq()}, p);
    CHECK(eq.y == Approx(0.0).margin(1e-12));

    // (pi/2, 0) with tau1 = tau2 = K0 = omega_delta = 1: y = 1 - (0 + 1) = 0
    const LoopParameters unit(1.0, 1.0, 1.0, kTri, 1.0);
    CHECK(to_equiv({kPi / 2.0, 0.0}, unit).y == Approx(0.0).margin(1e-14));

    for (int i = 0; i < 1000; ++i) {
        const PhaseState s{u(rng), u(rng)};
        const PhaseState back = to_phase(to_equiv(s, p), p);
        CHECK(back.theta_delta == s.theta_delta);
        CHECK(back.x == Approx(s.x).margin(1e-12 * (1.0 + std::abs(s.x))));
    }
}

TEST_CASE("omega_delta_free shifts the phase plane vertically", "[model][property]") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const double omega = u(rng);
        const LoopParameters p(0.9, 0.6, 3.1, kTri, omega);
        const LoopParameters p0 = p.with_omega_delta(0.0);
        const double theta = u(rng);
        const double x = u(rng);
        const auto shifted = rhs_phase({theta, x + omega * p.tau1() / p.k0()}, p);
        const auto base = rhs_phase({theta, x}, p0);
        CHECK(shifted.dx_dt == base.dx_dt);
        CHECK(shifted.dtheta_dt ==
              Approx(base.dtheta_dt).margin(1e-12 * (1.0 + std::abs(omega))));
    }
}
