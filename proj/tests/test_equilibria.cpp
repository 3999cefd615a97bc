#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pll/equilibria.hpp"
#include "pll/phase_model.hpp"

using namespace pll;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTri = 2.0 / kPi;

// Jacobians of the equivalent system on the two branches
std::array<std::array<double, 2>, 2> stable_jacobian(const LoopParameters& p) {
    const double ak = p.a_k0() * p.slope_k();
    const double bk = p.b_k0() * p.slope_k();
    return {{{0.0, 1.0}, {-bk, -ak}}};
}

std::array<std::array<double, 2>, 2> saddle_jacobian(const LoopParameters& p) {
    const double ak = p.a_k0() * p.slope_k();
    const double bk = p.b_k0() * p.slope_k();
    const double pk1 = kPi * p.slope_k() - 1.0;
    return {{{0.0, 1.0}, {bk / pk1, ak / pk1}}};
}

double residual(const std::array<std::array<double, 2>, 2>& J,
                const std::array<std::complex<double>, 2>& v,
                std::complex<double> lambda) {
    const std::complex<double> r0 = J[0][0] * v[0] + J[0][1] * v[1] - lambda * v[0];
    const std::complex<double> r1 = J[1][0] * v[0] + J[1][1] * v[1] - lambda * v[1];
    const double nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return std::sqrt(std::norm(r0) + std::norm(r1)) / (nv * std::abs(lambda));
}

LoopParameters random_params(std::mt19937_64& rng) {
    const double tau1 = oracles::log_uniform(rng, 1e-3, 1e3);
    const double tau2 = oracles::log_uniform(rng, 1e-3, 1e3);
    const double k0 = oracles::log_uniform(rng, 1e-3, 1e5);
    const double k = oracles::log_uniform(rng, 1.0 / kPi + 1e-3, 20.0);
    return {tau1, tau2, k0, k};
}

} // namespace

TEST_CASE("find_equilibria places and classifies both fixed points", "[equilibria]") {
    SECTION("zero deviation") {
        const LoopParameters p(1.0, 1.0, 1.0, kTri, 0.0);
        const auto eqs = find_equilibria(p);
        CHECK(eqs[0].theta_eq == 0.0);
        CHECK(eqs[0].x_eq == 0.0);
        CHECK(eqs[0].kind == EquilibriumKind::StableFocus);
        CHECK(eqs[1].theta_eq == kPi);
        CHECK(eqs[1].x_eq == 0.0);
        CHECK(eqs[1].kind == EquilibriumKind::Saddle);
    }
    SECTION("x_eq = omega*tau1/K0, cross-checked by root finding") {
        const LoopParameters p(2.0, 1.0, 4.0, kTri, 1.0);
        const auto eqs = find_equilibria(p);
        CHECK(eqs[0].x_eq == Approx(0.5));
        CHECK(eqs[1].x_eq == Approx(0.5));
        // bisection on dtheta/dt in x, at theta = 0
        double lo = -10.0, hi = 10.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (rhs_phase({0.0, mid}, p).dtheta_dt > 0.0 ? lo : hi) = mid;
        }
        CHECK(eqs[0].x_eq == Approx(0.5 * (lo + hi)).margin(1e-12));
    }
    SECTION("the vector field vanishes at every returned point") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            LoopParameters p = random_params(rng);
            p = p.with_omega_delta(oracles::log_uniform(rng, 1e-3, 1e2));
            for (const auto& e : find_equilibria(p)) {
                const auto d = rhs_phase({e.theta_eq, e.x_eq}, p);
                const double scale = p.omega_delta_free() + p.b_k0();
                CHECK(std::abs(d.dx_dt) <= 1e-12);
                CHECK(std::abs(d.dtheta_dt) <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("classify_stable matches the eigenvalue pattern", "[equilibria]") {
    CHECK(classify_stable({1.0, 1.0, 10.0, kTri}) == StableCase::Node);
    CHECK(classify_stable({1.0, 1.0, 1.0, kTri}) == StableCase::Focus);
    CHECK(classify_stable({1.0, 1.0, 2.0 * kPi, kTri}) == StableCase::DegenerateNode);

    std::mt19937_64 rng(8);
    for (int i = 0; i < 500; ++i) {
        const LoopParameters p = random_params(rng);
        const auto J = stable_jacobian(p);
        const auto eig = oracles::eig2(J[0][0], J[0][1], J[1][0], J[1][1]);
        const auto es = stable_eigensystem(p);
        switch (classify_stable(p)) {
            case StableCase::Node:
                CHECK(eig.l1.imag() == 0.0);
                CHECK(es.lambda1.imag() == 0.0);
                CHECK(es.lambda1.real() ==
                      Approx(eig.l1.real()).epsilon(1e-9).margin(1e-300));
                CHECK(es.lambda2.real() == Approx(eig.l2.real()).epsilon(1e-9));
                break;
            case StableCase::Focus:
                CHECK(es.lambda1.imag() > 0.0);
                CHECK(es.lambda1.imag() == Approx(eig.l1.imag()).epsilon(1e-9));
                break;
            case StableCase::DegenerateNode:
                CHECK(std::abs(es.lambda1 - es.lambda2) <=
                      1e-4 * std::abs(es.lambda1));
                break;
        }
    }
}

TEST_CASE("stable eigensystem follows the closed forms", "[equilibria]") {
    SECTION("focus: Re(lambda) = -a*K0*k/2 exactly") {
        const LoopParameters p(1.0, 1.0, 1.0, kTri);
        const auto es = stable_eigensystem(p);
        CHECK(es.lambda1.real() == -p.a_k0() * p.slope_k() / 2.0);
        CHECK(es.lambda2 == std::conj(es.lambda1));
        // U = (1, -a*K0*k/2), V = (0, im)
        CHECK(es.v1[0].real() == 1.0);
        CHECK(es.v1[1].real() == -p.a_k0() * p.slope_k() / 2.0);
        CHECK(es.v1[1].imag() == es.lambda1.imag());
    }
    SECTION("degenerate: double eigenvalue -a*K0*k/2") {
        const LoopParameters p(1.0, 1.0, 2.0 * kPi, kTri);
        const auto es = stable_eigensystem(p);
        CHECK(es.lambda1 == es.lambda2);
        CHECK(es.lambda1.real() == Approx(-p.a_k0() * p.slope_k() / 2.0));
    }
    SECTION("node: real, negative, distinct") {
        const LoopParameters p(1.0, 1.0, 10.0, kTri);
        const auto es = stable_eigensystem(p);
        CHECK(es.lambda1.imag() == 0.0);
        CHECK(es.lambda1.real() < 0.0);
        CHECK(es.lambda2.real() < es.lambda1.real());
    }
}

TEST_CASE("saddle eigensystem: signs, product, eigenvector normalization",
          "[equilibria]") {
    const LoopParameters p(1.0, 1.0, 1.0, kTri);
    const auto es = saddle_eigensystem(p);
    CHECK(es.lambda1.real() > 0.0);
    CHECK(es.lambda2.real() < 0.0);
    const double pk1 = kPi * kTri - 1.0;
    CHECK((es.lambda1 * es.lambda2).real() ==
          Approx(-p.b_k0() * kTri / pk1).epsilon(1e-12));
    // matches a direct eigensolve of [[0,1],[b K0 k/(pi k-1), a K0 k/(pi k-1)]]
    const auto J = saddle_jacobian(p);
    const auto eig = oracles::eig2(J[0][0], J[0][1], J[1][0], J[1][1]);
    CHECK(es.lambda1.real() == Approx(eig.l1.real()).epsilon(1e-12));
    CHECK(es.lambda2.real() == Approx(eig.l2.real()).epsilon(1e-12));
    // appendix convention: second component 1
    CHECK(es.v1[1] == std::complex<double>(1.0));
    CHECK(es.v2[1] == std::complex<double>(1.0));
    CHECK(es.v2[0].real() < 0.0);
}

TEST_CASE("eigen residuals and stability pattern over random parameters",
          "[equilibria][property]") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i) {
        const LoopParameters p = random_params(rng);

        const auto stable = stable_eigensystem(p);
        CHECK(stable.lambda1.real() < 0.0);
        CHECK(stable.lambda2.real() < 0.0);
        const auto Js = stable_jacobian(p);
        CHECK(residual(Js, stable.v1, stable.lambda1) <= 1e-10);
        if (classify_stable(p) != StableCase::DegenerateNode)
            CHECK(residual(Js, stable.v2, stable.lambda2) <= 1e-10);

        const auto saddle = saddle_eigensystem(p);
        CHECK(saddle.lambda1.real() > 0.0);
        CHECK(saddle.lambda2.real() < 0.0);
        const auto Ju = saddle_jacobian(p);
        CHECK(residual(Ju, saddle.v1, saddle.lambda1) <= 1e-10);
        CHECK(residual(Ju, saddle.v2, saddle.lambda2) <= 1e-10);
    }
}
