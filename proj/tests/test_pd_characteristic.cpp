#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "pll/pd_characteristic.hpp"

using namespace pll;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTri = 2.0 / kPi;
} // namespace

TEST_CASE("pd_value matches the triangular characteristic", "[pd]") {
    CHECK(pd_value(0.0, kTri) == 0.0);
    CHECK(pd_value(kPi / 2.0, kTri) == Approx(1.0).margin(1e-15));
    CHECK(pd_value(kPi, kTri) == Approx(0.0).margin(1e-15));
    CHECK(pd_value(-kPi / 2.0, kTri) == Approx(-1.0).margin(1e-15));
    // second branch: -(2/pi)*theta + 2
    CHECK(pd_value(2.0, kTri) == Approx(-(2.0 / kPi) * 2.0 + 2.0).margin(1e-15));
}

TEST_CASE("pd_value is 2*pi-periodic and odd", "[pd][property]") {
    std::mt19937_64 rng(991);
    std::uniform_real_distribution<double> theta_d(-10.0 * kPi, 10.0 * kPi);
    std::uniform_real_distribution<double> k_d(1.0 / kPi + 0.01, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const double theta = theta_d(rng);
        const double k = k_d(rng);
        const double v = pd_value(theta, k);
        CHECK(std::abs(v) <= 1.0 + 1e-12);
        CHECK(pd_value(theta + 2.0 * kPi, k) == Approx(v).margin(1e-12));
        CHECK(pd_value(-theta, k) == Approx(-v).margin(1e-12));
    }
}

TEST_CASE("pd_slope reports branch slopes and kinks", "[pd]") {
    CHECK(pd_slope(0.0, kTri).value() == kTri);
    CHECK(pd_slope(kPi, kTri).value() == Approx(-kTri).margin(1e-15));
    CHECK_FALSE(pd_slope(kPi / 2.0, kTri).has_value());
    CHECK_FALSE(pd_slope(-kPi / 2.0, kTri).has_value());
    // kink band is 1e-12 on the wrapped coordinate
    CHECK_FALSE(pd_slope(kPi / 2.0 + 1e-13, kTri).has_value());
    CHECK(pd_slope(kPi / 2.0 + 1e-9, kTri).has_value());
    // general slope on the falling branch
    const double k = 1.7;
    CHECK(pd_slope(kPi, k).value() == Approx(-k / (kPi * k - 1.0)));
    // periodic images of the kink
    CHECK_FALSE(pd_slope(1.0 / k + 2.0 * kPi, k).has_value());
}

TEST_CASE("zigzag regions tile the line and agree at kinks", "[pd]") {
    const double k = 1.3;
    std::mt19937_64 rng(992);
    std::uniform_real_distribution<double> theta_d(-20.0, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const double theta = theta_d(rng);
        const ZigzagRegion r = region_at(theta, k);
        CHECK(theta >= r.lo - 1e-12);
        CHECK(theta <= r.hi + 1e-12);
        CHECK(r.value_at(theta) == Approx(pd_value(theta, k)).margin(1e-12));
        // neighbours share bounds and the value is continuous across them
        const ZigzagRegion up = region_by_index(r.index + 1, k);
        CHECK(up.lo == Approx(r.hi).margin(1e-12));
        CHECK(up.value_at(r.hi) == Approx(r.value_at(r.hi)).margin(1e-12));
    }
    // half-open convention: a kink belongs to the piece on its right
    const ZigzagRegion at_kink = region_at(1.0 / k, k);
    CHECK(at_kink.lo == Approx(1.0 / k));
}
