// Two photons entering a balanced coupler: entropy and log-negativity over one period,
// then the same input with loss checked against the master-equation integrator.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wg/fock.hpp"
#include "wg/lindblad.hpp"
#include "wg/su2.hpp"
#include "wg/tfd.hpp"

int main() {
    using namespace wg;
    const auto psi = make_pure_state(FockSpec{1, 1}, 2);
    std::printf("%8s %10s %10s\n", "Jt", "S", "E_N");
    for (int k = 0; k <= 8; ++k) {
        const double Jt = k * std::numbers::pi / 8;
        const TwoModeDensityMatrix rho(evolve_lossless(psi, {0.0, 1.0}, Jt));
        std::printf("%8.4f %10.6f %10.6f\n", Jt, entanglement_entropy(rho).value, log_negativity(rho).value);
    }

    const DampedParams p{0.0, 0.5, 0.05};
    const TwoModeDensityMatrix rho0(psi);
    const auto grid = uniform_grid(10.0, 11);
    const auto oracle = integrate(rho0, p, 1e-3, grid);
    const auto report = compare(damped_trajectory(rho0, p, grid), oracle);
    std::printf("damped vs oracle, max trace distance: %.3e\n", report.max_trace_distance());
}
