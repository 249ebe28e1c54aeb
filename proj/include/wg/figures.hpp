// figures.hpp: curve families for each figure id, with their default parameters

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "wg/csv.hpp"
#include "wg/fock.hpp"
#include "wg/gaussian.hpp"
#include "wg/su2.hpp"
#include "wg/sweep.hpp"
#include "wg/tfd.hpp"
#include "wg/thermal.hpp"

namespace wg {

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"1a", "1b", "1c", "1d", "2a", "2b", "2c", "2d", "2e",
                                                 "2f", "3a", "3b", "3c", "3d", "4a", "4b", "5a", "5b", "6"};
    return ids;
}

struct FigureOptions {
    int steps{201};
};

namespace detail {

struct Curve {
    std::string name;
    std::function<double(double)> eval; // evaluated at the row's first-column value
};

/// Rows over x in [x0, x1] with first column scaled by x_scale (Jt = J t).
inline CsvTable tabulate(std::string first, double x0, double x1, int steps, double x_scale,
                         const std::vector<Curve>& curves) {
    if (steps < 2) throw UsageError("steps must be >= 2");
    CsvTable t;
    t.header.push_back(std::move(first));
    for (const auto& c : curves) t.header.push_back(c.name);
    auto rows = parallel_map(std::size_t(steps), [&](std::size_t k) {
        const double x = x0 + (x1 - x0) * double(k) / (steps - 1);
        std::vector<double> row{x * x_scale};
        for (const auto& c : curves) row.push_back(c.eval(x));
        return row;
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

inline double lossless_log_negativity(const StateSpec& spec, double Jt) {
    const auto psi = make_pure_state(spec, required_cutoff(spec));
    return log_negativity(TwoModeDensityMatrix(evolve_lossless(psi, {0.0, 1.0}, Jt))).value;
}

inline std::string label(double v) { return format_value(v); }

} // namespace detail

inline CsvTable figure_table(const std::string& id, const FigureOptions& opt = {}) {
    using detail::Curve;
    const double pi = std::numbers::pi;
    const int steps = opt.steps;

    if (id == "1a" || id == "1b" || id == "1c") {
        std::vector<std::pair<std::string, StateSpec>> inputs;
        if (id == "1a") inputs = {{"E_N_11", FockSpec{1, 1}}, {"E_N_20", FockSpec{2, 0}}};
        if (id == "1b") inputs = {{"E_N_22", FockSpec{2, 2}}, {"E_N_31", FockSpec{3, 1}}, {"E_N_40", FockSpec{4, 0}}};
        if (id == "1c")
            for (int N = 2; N <= 5; ++N) inputs.push_back({"E_N_noon" + std::to_string(N), NoonSpec{N}});
        std::vector<Curve> curves;
        for (const auto& [name, spec] : inputs)
            curves.push_back({name, [spec](double Jt) { return detail::lossless_log_negativity(spec, Jt); }});
        return detail::tabulate("Jt", 0.0, pi, steps, 1.0, curves);
    }
    if (id == "1d") {
        std::vector<Curve> curves;
        for (int N = 2; N <= 5; ++N)
            curves.push_back({"S_N" + std::to_string(N), [N](double Jt) { return entropy_closed(N, Jt).value; }});
        return detail::tabulate("Jt", 0.0, pi, steps, 1.0, curves);
    }
    if (id == "2a" || id == "2d" || id == "2c" || id == "2f") {
        const int N = (id == "2a" || id == "2c") ? 2 : 4;
        const std::vector<double> nbars = (id == "2a" || id == "2d")
                                              ? std::vector<double>{0.0, 0.5, 1.0, 2.0}
                                              : std::vector<double>{0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5};
        std::vector<Curve> curves;
        for (double nb : nbars)
            curves.push_back({"S_nbar" + detail::label(nb),
                              [N, nb](double Jt) { return thermal_entropy(N, Jt, {nb, nb}).value; }});
        return detail::tabulate("Jt", 0.0, pi, steps, 1.0, curves);
    }
    if (id == "2b" || id == "2e") {
        const int N = id == "2b" ? 2 : 4;
        std::vector<Curve> curves;
        for (double frac : {0.125, 0.25, 0.375}) {
            const double Jt = frac * pi;
            curves.push_back({"S_Jt" + detail::label(Jt),
                              [N, Jt](double nb) { return thermal_entropy(N, Jt, {nb, nb}).value; }});
        }
        return detail::tabulate("nbar", 0.0, 10.0, steps, 1.0, curves);
    }
    if (id == "3a" || id == "3b" || id == "3c" || id == "3d") {
        const double gamma = id == "3a" ? 0.0 : id == "3b" ? 0.01 : id == "3c" ? 0.03 : 0.05;
        const DampedParams p{0.0, 0.5, gamma};
        std::vector<Curve> curves;
        for (int N : {2, 4})
            curves.push_back({"S_N" + std::to_string(N), [p, N](double t) { return damped_entropy(N, p, t).value; }});
        return detail::tabulate("Jt", 0.0, 4.0 * pi, steps, p.J, curves);
    }
    if (id == "4a" || id == "4b") {
        std::vector<Curve> curves;
        if (id == "4a") {
            for (double r : {0.1, 0.25, 0.5}) {
                const DampedParams p{0.0, 0.5, 0.0};
                curves.push_back({"E_N_r" + detail::label(r), [p, r](double t) {
                                      return gaussian_log_negativity(covariance_vacuum_evolved(r, r, p, t)).value;
                                  }});
            }
        } else {
            for (double gamma : {0.0, 0.02, 0.05, 0.1}) {
                const DampedParams p{0.0, 0.5, gamma};
                curves.push_back({"E_N_gamma" + detail::label(gamma), [p](double t) {
                                      return gaussian_log_negativity(covariance_vacuum_evolved(0.25, 0.25, p, t)).value;
                                  }});
            }
        }
        return detail::tabulate("Jt", 0.0, 20.0, steps, 0.5, curves);
    }
    if (id == "5a" || id == "5b") {
        const double J = id == "5a" ? 3.0 : 0.25;
        std::vector<Curve> curves;
        for (double gamma : {0.01, 0.03, 0.05}) {
            const DampedParams p{0.0, J, gamma};
            curves.push_back({"purity_gamma" + detail::label(gamma), [p](double t) { return purity_closed(p, t).value; }});
        }
        return detail::tabulate("Jt", 0.0, 20.0, steps, J, curves);
    }
    if (id == "6") {
        const DampedParams p{0.0, 0.5, 0.05};
        std::vector<Curve> curves;
        for (double r : {0.25, 0.5, 0.75, 1.0})
            curves.push_back({"E_N_r" + detail::label(r), [p, r](double nb) {
                                  return gaussian_log_negativity(covariance_thermal_evolved(nb, nb, r, r, p, 1.0)).value;
                              }});
        return detail::tabulate("nbar", 0.0, 5.0, steps, 1.0, curves);
    }
    throw UsageError("unknown figure id '" + id + "'");
}

} // namespace wg
