// cli.hpp: command dispatch behind the wgsim tool
//
// Every command computes its full table first and writes it afterwards, so an output file
// is either complete or untouched.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <functional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "wg/csv.hpp"
#include "wg/errors.hpp"
#include "wg/figures.hpp"
#include "wg/fock.hpp"
#include "wg/gaussian.hpp"
#include "wg/lindblad.hpp"
#include "wg/state_spec.hpp"
#include "wg/su2.hpp"
#include "wg/sweep.hpp"
#include "wg/tfd.hpp"
#include "wg/thermal.hpp"

namespace wg {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitNumerical = 3,
    kExitTolerance = 4,
};

struct RunConfig {
    std::string command;       ///< lossless | noon | thermal | damped | gaussian | purity | compare | figure
    std::string figure_id;
    double omega{0.0};
    double J{1.0};
    double gamma{0.0};
    double nbar{0.0};
    double r{0.25};
    int N{2};
    int cutoff{-1};            ///< -1: smallest cutoff that holds the input (default cutoff for tmsv)
    double t_max{std::numbers::pi};
    int steps{201};
    std::string input_spec{"fock:1,1"};
    std::string output_path;   ///< empty: standard output
    std::string trajectory_path; ///< compare: optional oracle trajectory dump
    double tolerance{1e-4};    ///< compare: max trace distance
    double dt{0.0};            ///< compare/purity oracle step; 0 selects default_config
    PurityVariant purity_variant{PurityVariant::as_printed};
    LossModel loss_model{LossModel::pure_loss};
    bool steps_set{false};     ///< figure: --steps given explicitly

    void validate() const {
        if (steps < 2) throw UsageError("--steps must be >= 2");
        if (!(t_max > 0.0)) throw UsageError("--tmax must be > 0");
        if (!(J > 0.0)) throw UsageError("--J must be > 0");
        if (omega < 0.0 || gamma < 0.0 || nbar < 0.0 || r < 0.0)
            throw UsageError("--omega, --gamma, --nbar and --r must be >= 0");
        if (N < 1) throw UsageError("--N must be >= 1");
    }
};

namespace detail {

inline std::vector<double> time_grid(const RunConfig& c) { return uniform_grid(c.t_max, c.steps); }

inline int cutoff_for(const RunConfig& c, const StateSpec& spec) {
    const int need = required_cutoff(spec);
    if (c.cutoff < 0) return std::holds_alternative<TmsvSpec>(spec) ? kDefaultCutoff : std::max(need, 1);
    if (c.cutoff < need)
        throw UsageError("--cutoff " + std::to_string(c.cutoff) + " is below the input's photon number " +
                         std::to_string(need));
    return c.cutoff;
}

inline CsvTable measures_table(const std::vector<double>& times, double J,
                               const std::function<TwoModeDensityMatrix(double)>& state_at) {
    CsvTable t;
    t.header = {"Jt", "S", "E_N", "purity"};
    auto rows = parallel_map(times.size(), [&](std::size_t k) {
        const auto rho = state_at(times[k]);
        return std::vector<double>{J * times[k], entanglement_entropy(rho).value, log_negativity(rho).value,
                                   purity(rho).value};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

inline CsvTable run_lossless(const RunConfig& c, const StateSpec& spec) {
    const auto psi = make_pure_state(spec, cutoff_for(c, spec));
    const CouplerParams p{c.omega, c.J};
    return measures_table(time_grid(c), c.J,
                          [&](double t) { return TwoModeDensityMatrix(evolve_lossless(psi, p, t)); });
}

inline CsvTable run_thermal(const RunConfig& c, const StateSpec& spec) {
    ThermalOccupation occ{c.nbar, c.nbar};
    if (auto th = std::get_if<ThermalSpec>(&spec)) occ = {th->nbar_a, th->nbar_b};
    CsvTable t;
    t.header = {"Jt", "S_as_printed", "S_normalized"};
    for (double time : time_grid(c)) {
        const double Jt = c.J * time;
        t.add_row({Jt, thermal_entropy(c.N, Jt, occ, ThermalVariant::as_printed).value,
                   thermal_entropy(c.N, Jt, occ, ThermalVariant::normalized).value});
    }
    return t;
}

inline CsvTable run_damped(const RunConfig& c, const StateSpec& spec) {
    const auto rho0 = make_density(spec, cutoff_for(c, spec));
    const DampedParams p{c.omega, c.J, c.gamma};
    const auto grid = time_grid(c);
    CsvTable t = measures_table(grid, c.J, [&](double time) { return evolve_damped_exact(rho0, p, time); });
    t.header.push_back("S_closed_N" + std::to_string(c.N));
    t.header.push_back("purity_closed");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        t.rows[k].push_back(damped_entropy(c.N, p, grid[k]).value);
        t.rows[k].push_back(purity_closed(p, grid[k], c.purity_variant).value);
    }
    return t;
}

inline CsvTable run_gaussian(const RunConfig& c, const StateSpec& spec) {
    const DampedParams p{c.omega, c.J, c.gamma};
    double r = c.r, n1 = c.nbar, n2 = c.nbar;
    if (auto s = std::get_if<TmsvSpec>(&spec)) r = s->r;
    if (auto th = std::get_if<ThermalSpec>(&spec)) {
        n1 = th->nbar_a;
        n2 = th->nbar_b;
    }
    const bool thermal = n1 > 0.0 || n2 > 0.0;
    CsvTable t;
    t.header = {"Jt", "E_N", "nu_minus_pt", "simon_lhs", "simon_rhs", "separable"};
    for (double time : time_grid(c)) {
        const auto g = thermal ? covariance_thermal_evolved(n1, n2, r, r, p, time, c.loss_model)
                               : covariance_vacuum_evolved(r, r, p, time, c.loss_model);
        const auto simon = simon_separable(g);
        t.add_row({c.J * time, gaussian_log_negativity(g).value, symplectic_spectrum(g, true).nu_minus, simon.lhs,
                   simon.rhs, simon.separable ? 1.0 : 0.0});
    }
    return t;
}

inline IntegratorConfig oracle_config(const RunConfig& c, const DampedParams& p, int cutoff) {
    auto cfg = default_config(p, cutoff, c.t_max, c.steps);
    if (c.dt > 0.0) cfg.dt = c.dt;
    return cfg;
}

inline CsvTable run_purity(const RunConfig& c, const StateSpec& spec) {
    const DampedParams p{c.omega, c.J, c.gamma};
    const auto grid = time_grid(c);
    const auto rho0 = make_density(spec, cutoff_for(c, spec));
    const auto oracle = integrate(rho0, p, oracle_config(c, p, rho0.space().cutoff()).dt, grid, false);
    CsvTable t;
    t.header = {"Jt", "purity_closed", "purity_closed_rate_times_t", "purity_oracle"};
    for (std::size_t k = 0; k < grid.size(); ++k)
        t.add_row({c.J * grid[k], purity_closed(p, grid[k], PurityVariant::as_printed).value,
                   purity_closed(p, grid[k], PurityVariant::rate_times_t).value, purity(oracle.states[k]).value});
    return t;
}

struct CompareOutcome {
    CsvTable table;
    DeviationReport report;
    Trajectory oracle;
};

inline CompareOutcome run_compare(const RunConfig& c, const StateSpec& spec) {
    const auto rho0 = make_density(spec, cutoff_for(c, spec));
    const DampedParams p{c.omega, c.J, c.gamma};
    const auto grid = time_grid(c);
    auto oracle = integrate(rho0, p, oracle_config(c, p, rho0.space().cutoff()).dt, grid, false);
    const auto closed = c.gamma == 0.0 ? lossless_trajectory(rho0, p.coupler(), grid) : damped_trajectory(rho0, p, grid);
    auto report = compare(closed, oracle);
    CsvTable t;
    t.header = {"Jt", "max_abs", "trace_distance", "d_S", "d_E_N", "d_purity"};
    for (const auto& s : report.samples)
        t.add_row({c.J * s.t, s.max_abs, s.trace_distance, s.d_entropy, s.d_log_negativity, s.d_purity});
    return {std::move(t), std::move(report), std::move(oracle)};
}

inline void emit(const RunConfig& c, const CsvTable& t, std::ostream& out) {
    const std::string text = to_csv(t);
    if (c.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.output_path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open output file " + c.output_path);
    f << text;
    if (!f) throw UsageError("failed writing output file " + c.output_path);
}

} // namespace detail

/// Runs one command; returns the process exit code. Errors are reported on err.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        c.validate();
        if (c.command == "figure") {
            FigureOptions opt;
            if (c.steps_set) opt.steps = c.steps;
            detail::emit(c, figure_table(c.figure_id, opt), out);
            return kExitOk;
        }
        const StateSpec spec = c.command == "noon" ? StateSpec{NoonSpec{c.N}} : parse_state_spec(c.input_spec);
        if (c.command == "lossless" || c.command == "noon") {
            detail::emit(c, detail::run_lossless(c, spec), out);
        } else if (c.command == "thermal") {
            detail::emit(c, detail::run_thermal(c, spec), out);
        } else if (c.command == "damped") {
            detail::emit(c, detail::run_damped(c, spec), out);
        } else if (c.command == "gaussian") {
            detail::emit(c, detail::run_gaussian(c, spec), out);
        } else if (c.command == "purity") {
            detail::emit(c, detail::run_purity(c, spec), out);
        } else if (c.command == "compare") {
            const auto outcome = detail::run_compare(c, spec);
            detail::emit(c, outcome.table, out);
            if (!c.trajectory_path.empty()) {
                std::ofstream f(c.trajectory_path, std::ios::binary | std::ios::trunc);
                if (!f) throw UsageError("cannot open trajectory file " + c.trajectory_path);
                write_trajectory_csv(f, outcome.oracle);
            }
            const double worst = outcome.report.max_trace_distance();
            err << "compare: max trace distance " << format_value(worst) << ", max elementwise "
                << format_value(outcome.report.max_abs()) << " (tolerance " << format_value(c.tolerance) << ")\n";
            if (worst > c.tolerance) return kExitTolerance;
        } else {
            throw UsageError("unknown command '" + c.command + "'");
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapacityError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ValidityError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace wg
