#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wg/fock.hpp"
#include "wg/gaussian.hpp"
#include "wg/lindblad.hpp"

using namespace wg;
using Catch::Matchers::WithinAbs;

namespace {

// (mode a, mode b) swap in (x, p_x, y, p_y) ordering
Matrix4 swap_modes(const Matrix4& v) {
    Eigen::PermutationMatrix<4> perm;
    perm.indices() << 2, 3, 0, 1;
    return perm * v * perm.transpose();
}

GaussianState thermal_product(double n1, double n2) {
    Matrix4 v = Matrix4::Zero();
    v.diagonal() << n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5;
    return GaussianState(v);
}

} // namespace

TEST_CASE("vacuum conventions", "[gaussian]") {
    const auto vac = covariance_vacuum_evolved(0.0, 0.0, {0.0, 0.5, 0.0}, 0.0);
    REQUIRE((vac.matrix() - GaussianState::vacuum().matrix()).cwiseAbs().maxCoeff() == 0.0);
    const auto nu = symplectic_spectrum(vac, false);
    CHECK_THAT(nu.nu_plus, WithinAbs(0.5, 1e-12));
    CHECK_THAT(nu.nu_minus, WithinAbs(0.5, 1e-12));
    const auto nu_pt = symplectic_spectrum(vac, true);
    CHECK_THAT(nu_pt.nu_minus, WithinAbs(0.5, 1e-12));
    CHECK(gaussian_log_negativity(vac).value == 0.0);
    CHECK(simon_separable(vac).separable);
    CHECK(vac.is_physical());

    // a lossy vacuum stays the vacuum
    const auto lossy = covariance_vacuum_evolved(0.0, 0.0, {0.0, 0.5, 0.3}, 2.0);
    CHECK((lossy.matrix() - GaussianState::vacuum().matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("two-mode squeezed vacuum", "[gaussian]") {
    for (double r : {0.1, 0.25, 0.5, 1.0}) {
        const auto g = covariance_vacuum_evolved(r, r, {0.0, 0.5, 0.0}, 0.0);
        REQUIRE((g.matrix() - GaussianState::tmsv(r).matrix()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK_THAT(symplectic_spectrum(g, true).nu_minus, WithinAbs(std::exp(-2 * r) / 2, 1e-12));
        // pure: nu+ = nu- is a double root, so rounding moves it by ~sqrt(eps)
        CHECK_THAT(symplectic_spectrum(g, false).nu_minus, WithinAbs(0.5, 1e-7));
        CHECK_THAT(gaussian_log_negativity(g).value, WithinAbs(2 * r / std::log(2.0), 1e-12));
        CHECK_FALSE(simon_separable(g).separable);
        CHECK(g.is_physical());
    }
    CHECK_THAT(gaussian_log_negativity(GaussianState::tmsv(0.25)).value, WithinAbs(0.72135, 1e-5));
}

TEST_CASE("Gaussian E_N matches the Fock-space partial transpose", "[gaussian][oracle]") {
    for (double r : {0.1, 0.25, 0.5}) {
        const auto rho = make_density(TmsvSpec{r}, 40);
        INFO("r=" << r);
        REQUIRE_THAT(gaussian_log_negativity(GaussianState::tmsv(r)).value,
                     WithinAbs(log_negativity(rho).value, 1e-6));
    }
}

TEST_CASE("pure-loss model matches the master equation for a lossy TMSV", "[gaussian][oracle]") {
    // J is negligible here so the two modes only lose photons
    const double r = 0.1, gamma = 0.1;
    const DampedParams p{0.0, 1e-9, gamma};
    const auto rho0 = make_density(TmsvSpec{r}, 12);
    const std::vector<double> times{0.0, 0.5, 1.5};
    const auto tr = integrate(rho0, p, 0.01, times, false);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto g = covariance_vacuum_evolved(r, r, p, times[k]);
        INFO("t=" << times[k]);
        REQUIRE_THAT(gaussian_log_negativity(g).value, WithinAbs(log_negativity(tr.states[k]).value, 1e-6));
    }
    // the scaling-only model overshoots for t > 0
    const auto scaled = covariance_vacuum_evolved(r, r, p, 1.5, LossModel::as_printed);
    CHECK(gaussian_log_negativity(scaled).value > log_negativity(tr.states.back()).value + 1e-3);
}

TEST_CASE("thermal covariance", "[gaussian]") {
    // zero occupation: same spectra as the vacuum-evolved matrix
    for (double r : {0.0, 0.3}) {
        const DampedParams p{0.0, 0.5, 0.05};
        const auto th = covariance_thermal_evolved(0.0, 0.0, r, r, p, 1.3);
        const auto va = covariance_vacuum_evolved(r, r, p, 1.3);
        CHECK_THAT(gaussian_log_negativity(th).value, WithinAbs(gaussian_log_negativity(va).value, 1e-12));
        CHECK_THAT(symplectic_spectrum(th, false).nu_minus, WithinAbs(symplectic_spectrum(va, false).nu_minus, 1e-12));
    }
    const auto g = covariance_thermal_evolved(1.0, 1.0, 0.4, 0.4, {0.0, 0.5, 0.02}, 2.0);
    CHECK((swap_modes(g.matrix()) - g.matrix()).cwiseAbs().maxCoeff() < 1e-15);

    // regression: n = 1, r = 0.25, gamma = 0.1, t = 1
    const auto reg = covariance_thermal_evolved(1.0, 1.0, 0.25, 0.25, {0.0, 0.5, 0.1}, 1.0);
    CHECK_THAT(reg.matrix()(0, 0), WithinAbs(1.47546770698657, 1e-12));
    CHECK_THAT(reg.matrix()(0, 2), WithinAbs(0.639955127838445, 1e-12));
    CHECK_THAT(reg.matrix()(1, 3), WithinAbs(-0.639955127838445, 1e-12));
    CHECK(gaussian_log_negativity(reg).value == 0.0);
    CHECK(simon_separable(reg).separable);

    // hot enough inputs are separable, cold ones entangled
    CHECK(simon_separable(covariance_thermal_evolved(3.0, 3.0, 0.25, 0.25, {0.0, 0.5, 0.05}, 1.0)).separable);
    CHECK_FALSE(simon_separable(covariance_thermal_evolved(0.05, 0.05, 0.5, 0.5, {0.0, 0.5, 0.05}, 1.0)).separable);
}

TEST_CASE("product thermal states are PPT", "[gaussian]") {
    for (double n1 : {0.0, 0.3, 2.0})
        for (double n2 : {0.0, 1.5}) {
            const auto g = thermal_product(n1, n2);
            CHECK(symplectic_spectrum(g, true).nu_minus >= 0.5 - 1e-15);
            CHECK(simon_separable(g).separable);
            CHECK(gaussian_log_negativity(g).value == 0.0);
        }
}

TEST_CASE("unphysical covariance is reported", "[gaussian]") {
    Matrix4 v = 0.1 * Matrix4::Identity();
    const GaussianState g(v);
    CHECK_FALSE(g.is_physical());
    Matrix4 asym = Matrix4::Identity();
    asym(0, 1) = 0.3;
    REQUIRE_THROWS_AS(GaussianState(asym), ValidityError);
    REQUIRE_THROWS_AS(covariance_vacuum_evolved(-0.1, 0.0, {0.0, 0.5, 0.0}, 0.0), UsageError);
}

TEST_CASE("Simon test agrees with the log-negativity", "[gaussian][property]") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int entangled = 0, separable = 0;
    for (int k = 0; k < 200; ++k) {
        const DampedParams p{u(rng), 0.1 + u(rng), 0.2 * u(rng)};
        const double r1 = 1.2 * u(rng), r2 = 1.2 * u(rng), t = 10.0 * u(rng);
        const GaussianState g = (k % 2) ? covariance_vacuum_evolved(r1, r2, p, t)
                                        : covariance_thermal_evolved(2.0 * u(rng), 2.0 * u(rng), r1, r2, p, t);
        const double nu = symplectic_spectrum(g, true).nu_minus;
        if (std::abs(2 * nu - 1) < 1e-9) continue; // on the boundary either answer is acceptable
        const bool zero = gaussian_log_negativity(g).value == 0.0;
        INFO("draw " << k);
        REQUIRE(simon_separable(g).separable == zero);
        (zero ? separable : entangled)++;
        REQUIRE(g.is_physical());
    }
    CHECK(entangled > 20);
    CHECK(separable > 20);
}

TEST_CASE("loss never increases the Gaussian entanglement", "[gaussian][property]") {
    for (double t : {0.5, 2.0, 8.0}) {
        double prev = 1e9;
        for (int k = 0; k < 10; ++k) {
            const double gamma = 0.02 * k;
            const double e = gaussian_log_negativity(covariance_vacuum_evolved(0.25, 0.25, {0.0, 0.5, gamma}, t)).value;
            REQUIRE(e <= prev + 1e-15);
            prev = e;
        }
    }
}
