#include "pll/equilibria.hpp"

#include <cmath>
#include <numbers>

namespace pll {

const char* to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::StableNode: return "StableNode";
        case EquilibriumKind::StableDegenerateNode: return "StableDegenerateNode";
        case EquilibriumKind::StableFocus: return "StableFocus";
        case EquilibriumKind::Saddle: return "Saddle";
    }
    return "?";
}

const char* to_string(StableCase c) {
    switch (c) {
        case StableCase::Node: return "Node";
        case StableCase::DegenerateNode: return "DegenerateNode";
        case StableCase::Focus: return "Focus";
    }
    return "?";
}

double stable_discriminant(const LoopParameters& p) {
    const double ak0 = p.a_k0();
    return ak0 * ak0 - 4.0 * p.b_k0() / p.slope_k();
}

double degeneracy_band(const LoopParameters& p) {
    const double ak0 = p.a_k0();
    return 1e-9 * std::max(ak0 * ak0, 4.0 * p.b_k0() / p.slope_k());
}

StableCase classify_stable(const LoopParameters& p) {
    const double d = stable_discriminant(p);
    const double eta = degeneracy_band(p);
    if (d > eta) return StableCase::Node;
    if (d < -eta) return StableCase::Focus;
    return StableCase::DegenerateNode;
}

std::array<Equilibrium, 2> find_equilibria(const LoopParameters& p) {
    EquilibriumKind stable_kind;
    switch (classify_stable(p)) {
        case StableCase::Node: stable_kind = EquilibriumKind::StableNode; break;
        case StableCase::DegenerateNode:
            stable_kind = EquilibriumKind::StableDegenerateNode;
            break;
        default: stable_kind = EquilibriumKind::StableFocus; break;
    }
    const double x_eq = p.x_eq();
    return {Equilibrium{0.0, x_eq, 0.0, stable_kind},
            Equilibrium{std::numbers::pi, x_eq, 0.0, EquilibriumKind::Saddle}};
}

EigenSystem stable_eigensystem(const LoopParameters& p) {
    const double ak = p.a_k0() * p.slope_k();
    const double bk = p.b_k0() * p.slope_k();
    EigenSystem e;
    switch (classify_stable(p)) {
        case StableCase::Node: {
            const double sq = std::sqrt(ak * ak - 4.0 * bk);
            e.lambda1 = (-ak + sq) / 2.0;
            e.lambda2 = (-ak - sq) / 2.0;
            e.v1 = {1.0, e.lambda1};
            e.v2 = {1.0, e.lambda2};
            break;
        }
        case StableCase::Focus: {
            const double im = std::sqrt(4.0 * bk - ak * ak) / 2.0;
            e.lambda1 = {-ak / 2.0, im};
            e.lambda2 = {-ak / 2.0, -im};
            // U = (1, -a*K0*k/2), V = (0, +/- im)
            e.v1 = {1.0, e.lambda1};
            e.v2 = {1.0, e.lambda2};
            break;
        }
        case StableCase::DegenerateNode: {
            const double lam = -ak / 2.0;
            e.lambda1 = lam;
            e.lambda2 = lam;
            e.v1 = {1.0, lam};
            e.v2 = e.v1; // single eigenvector of the double eigenvalue
            break;
        }
    }
    return e;
}

EigenSystem saddle_eigensystem(const LoopParameters& p) {
    const double ak = p.a_k0() * p.slope_k();
    const double bk = p.b_k0() * p.slope_k();
    const double pk1 = std::numbers::pi * p.slope_k() - 1.0;
    const double tr = ak / pk1;          // Jacobian trace
    const double det = -bk / pk1;        // Jacobian determinant (< 0)
    const double sq = std::sqrt(tr * tr - 4.0 * det);
    EigenSystem e;
    e.lambda1 = (tr + sq) / 2.0;
    e.lambda2 = (tr - sq) / 2.0;
    // second component normalized to 1
    const double root = std::sqrt(ak * ak + 4.0 * bk * pk1);
    e.v1 = {(root - ak) / (2.0 * bk), 1.0};
    e.v2 = {-(root + ak) / (2.0 * bk), 1.0};
    return e;
}

} // namespace pll
