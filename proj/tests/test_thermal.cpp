#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "wg/su2.hpp"
#include "wg/thermal.hpp"

using namespace wg;
using Catch::Matchers::WithinAbs;

constexpr double pi = std::numbers::pi;

TEST_CASE("Bose-Einstein weights", "[thermal]") {
    CHECK(thermal_weight(0.0, 0) == 1.0);
    CHECK(thermal_weight(0.0, 3) == 0.0);
    CHECK_THAT(thermal_weight(1.0, 1), WithinAbs(0.25, 1e-15));
    CHECK_THAT(thermal_weight(2.0, 3), WithinAbs(8.0 / 81.0, 1e-15));

    for (double nbar : {0.1, 1.0, 2.0, 5.0}) {
        double sum = 0.0;
        for (int n = 0; n <= 200; ++n) sum += thermal_weight(nbar, n);
        INFO("nbar=" << nbar);
        REQUIRE_THAT(sum, WithinAbs(1.0, 1e-10));
    }
    REQUIRE_THROWS_AS(thermal_weight(-1.0, 0), UsageError);
    REQUIRE_THROWS_AS(ThermalOccupation({-0.5, 0.0}).validate(), UsageError);
}

TEST_CASE("thermal PT spectrum", "[thermal]") {
    const auto s = thermal_pt_spectrum(2, pi / 4, {1.0, 1.0});
    CHECK_THAT(s.diagonal[1], WithinAbs(1.0 / 16 * 0.5, 1e-15));
    CHECK_THAT(s.diagonal[0], WithinAbs(0.25 * 0.25, 1e-15));
    CHECK_THAT(s.diagonal[2], WithinAbs(1.0 / 64 * 0.25, 1e-15));

    // zero temperature keeps only the n_a = 0 term of the lossless family
    for (double Jt : {0.2, pi / 4, 1.1}) {
        const auto z = thermal_pt_spectrum(3, Jt, {0.0, 0.0});
        const auto lossless = pt_spectrum_closed(3, Jt);
        CHECK(z.diagonal[0] == lossless.diagonal[0]);
        for (int n = 1; n <= 3; ++n) CHECK(z.diagonal[n] == 0.0);
    }

    // no coupling yet: only the n_a = 0 diagonal entry survives
    const auto t0 = thermal_pt_spectrum(4, 0.0, {0.7, 0.7});
    CHECK(t0.diagonal[0] > 0.0);
    for (int n = 1; n <= 4; ++n) CHECK(t0.diagonal[n] == 0.0);
    for (const auto& pr : t0.pairs) CHECK(pr.magnitude == 0.0);
}

TEST_CASE("closed-form thermal entropy", "[thermal][entropy]") {
    // N = 2, nbar = 0, Jt = pi/4: -(1/4)log2(1/4) twice, the middle term vanishes
    CHECK_THAT(thermal_entropy(2, pi / 4, {0.0, 0.0}).value, WithinAbs(1.0, 1e-14));

    // Jt = 0: only -w0 log2 w0 with w0 = 1/(nbar+1)^2
    for (double nbar : {0.5, 1.0, 3.0}) {
        const double w0 = 1.0 / ((nbar + 1) * (nbar + 1));
        CHECK_THAT(thermal_entropy(2, 0.0, {nbar, nbar}).value, WithinAbs(-w0 * std::log2(w0), 1e-14));
    }
    CHECK(thermal_entropy(2, pi / 4, {1e6, 1e6}).value < 1e-9);
    CHECK(thermal_entropy(4, pi / 4, {1e6, 1e6}).value < 1e-9);
}

TEST_CASE("normalized variant", "[thermal][entropy]") {
    // at zero temperature only one eigenvalue is left, so the normalized entropy is 0
    CHECK(thermal_entropy(2, pi / 4, {0.0, 0.0}, ThermalVariant::normalized).value == 0.0);
    // weighted diagonal family rescaled to unit sum
    const auto sp = thermal_pt_spectrum(3, 0.6, {1.0, 1.0});
    double total = 0.0, s = 0.0;
    for (double l : sp.diagonal) total += l;
    for (double l : sp.diagonal) s -= l / total * std::log2(l / total);
    CHECK_THAT(thermal_entropy(3, 0.6, {1.0, 1.0}, ThermalVariant::normalized).value, WithinAbs(s, 1e-13));
}

TEST_CASE("thermal noise lowers the entropy at Jt = pi/4", "[thermal][property]") {
    for (int N : {2, 4}) {
        double prev = thermal_entropy(N, pi / 4, {0.0, 0.0}).value;
        for (double nbar : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double cur = thermal_entropy(N, pi / 4, {nbar, nbar}).value;
            INFO("N=" << N << " nbar=" << nbar);
            REQUIRE(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}
