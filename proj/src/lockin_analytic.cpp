#include "pll/lockin_analytic.hpp"

#include <cmath>
#include <numbers>

namespace pll {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(LockInMethod m) {
    return m == LockInMethod::Analytic ? "analytic" : "numeric";
}

double separatrix_slope_at_break(const LoopParameters& p) {
    const double ak0 = p.a_k0();
    const double bk0 = p.b_k0();
    return (std::sqrt(ak0 * ak0 + 4.0 * bk0 * (kPi - 1.0 / p.slope_k())) - ak0) / 2.0;
}

std::pair<double, CaseCoefficients> s_prime_at_target(const LoopParameters& p) {
    const double k = p.slope_k();
    const double ak0 = p.a_k0();
    const double bk0 = p.b_k0();
    const double ak = ak0 * k;
    const double bk = bk0 * k;
    // sqrt((a*K0)^2 + 4*b*K0*(pi - 1/k)), shared by all three cases
    const double root_plus = std::sqrt(ak0 * ak0 + 4.0 * bk0 * (kPi - 1.0 / k));

    CaseCoefficients cc;
    cc.case_tag = classify_stable(p);
    double s_prime = 0.0;

    switch (cc.case_tag) {
        case StableCase::Node: {
            const double sq = std::sqrt(ak * ak - 4.0 * bk);
            const double ratio_pm = root_plus / (sq / k); // sqrt(...+)/sqrt(...-)
            cc.c1 = (ratio_pm + 1.0) / (2.0 * k);
            cc.c2 = (1.0 - ratio_pm) / (2.0 * k);
            cc.lambda_s = (-ak + sq) / 2.0;
            const double base = -cc.c2 / cc.c1;
            if (!(cc.c1 > 0.0 && cc.c2 < 0.0 && base > 0.0 && base < 1.0))
                throw CaseInvariantError("node-case coefficients out of range");
            cc.t0 = std::log(base) / sq;
            const double power = 0.5 - ak / (2.0 * sq);
            s_prime = cc.c1 * sq * std::exp(power * std::log(base));
            break;
        }
        case StableCase::Focus: {
            const double sig = std::sqrt(4.0 * bk - ak * ak); // 2*Im(lambda)
            const double re = -ak / 2.0;
            const double im = sig / 2.0;
            cc.c1 = 1.0 / k;
            cc.c2 = root_plus / sig;
            cc.lambda_s = {re, im};
            cc.t0 = std::atan(-cc.c1 / cc.c2) / im;
            if (!(cc.c1 > 0.0 && cc.c2 > 0.0 && cc.t0 * im > -kPi / 2.0 && cc.t0 * im < 0.0))
                throw CaseInvariantError("focus-case coefficients out of range");
            const double cs = std::cos(cc.t0 * im);
            const double sn = std::sin(cc.t0 * im);
            s_prime = std::exp(cc.t0 * re) *
                      (-(ak / 2.0) * (cc.c1 * cs + cc.c2 * sn) +
                       (sig / 2.0) * (cc.c2 * cs - cc.c1 * sn));
            break;
        }
        case StableCase::DegenerateNode: {
            cc.c2 = root_plus / 2.0;
            cc.c1 = 1.0 / k - cc.c2;
            cc.lambda_s = -ak / 2.0;
            cc.t0 = -1.0 / (cc.c2 * k);
            if (!(cc.c2 > 0.0 && cc.t0 < 0.0))
                throw CaseInvariantError("degenerate-case coefficients out of range");
            s_prime = cc.c2 * std::exp(ak0 / (2.0 * cc.c2));
            break;
        }
    }
    return {s_prime, cc};
}

LockInResult lock_in_analytic(const LoopParameters& p) {
    auto [s_prime, cc] = s_prime_at_target(p);
    LockInResult r;
    r.omega_l = s_prime / 2.0;
    r.case_tag = cc.case_tag;
    r.method = LockInMethod::Analytic;
    r.s_prime_at_zero = s_prime;
    r.diagnostics["s_prime_at_break"] = separatrix_slope_at_break(p);
    r.diagnostics["discriminant"] = stable_discriminant(p);
    r.diagnostics["c1"] = cc.c1;
    r.diagnostics["c2"] = cc.c2;
    r.diagnostics["t0"] = cc.t0;
    return r;
}

double lock_in_triangular(double a_k0, double b_k0) {
    const double d = a_k0 * a_k0 - 2.0 * b_k0 * kPi;
    const double eta = 1e-9 * std::max(a_k0 * a_k0, 2.0 * b_k0 * kPi);
    const double root_plus = std::sqrt(a_k0 * a_k0 + 2.0 * b_k0 * kPi);

    if (d > eta) { // stable node
        const double root_minus = std::sqrt(d);
        const double c1 = kPi / 4.0 * (root_plus / root_minus + 1.0);
        const double c2 = kPi / 4.0 * (1.0 - root_plus / root_minus);
        const double power = 0.5 - a_k0 / (2.0 * root_minus);
        return c1 / kPi * root_minus * std::pow(-c2 / c1, power);
    }
    if (d < -eta) { // stable focus
        const double root_minus = std::sqrt(-d); // sqrt(2*b*K0*pi - (a*K0)^2)
        const double c1 = kPi / 2.0;
        const double c2 = kPi * root_plus / (2.0 * root_minus);
        const double re = -a_k0 / kPi;
        const double im = root_minus / kPi;
        const double t0 = std::atan(-c1 / c2) / im;
        const double cs = std::cos(t0 * im);
        const double sn = std::sin(t0 * im);
        return -a_k0 * std::exp(t0 * re) / (2.0 * kPi) * (c1 * cs + c2 * sn) +
               std::exp(t0 * re) * root_minus / (2.0 * kPi) * (c2 * cs - c1 * sn);
    }
    // stable degenerated node
    const double c2 = root_plus / 2.0;
    return 0.5 * c2 * std::exp(a_k0 / (2.0 * c2));
}

} // namespace pll
