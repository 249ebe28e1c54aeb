// lindblad.hpp: brute-force master-equation integrator used as ground truth
//
//   d rho/dt = -i[H, rho] + gamma sum_{L = a, b} (2 L rho L^\dagger - L^\dagger L rho - rho L^\dagger L)
//
// H conserves n_a + n_b and loss lowers it, so the truncated space n_a + n_b <= cutoff is
// closed under the flow and the only error is the RK4 step error.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "wg/errors.hpp"
#include "wg/fock.hpp"
#include "wg/tfd.hpp"

namespace wg {

class LindbladModel {
public:
    LindbladModel(const FockSpace& space, const DampedParams& p) : space_(space), params_(p) {
        p.validate();
        a_ = space.annihilation(Mode::a);
        b_ = space.annihilation(Mode::b);
        const Matrix na = a_.adjoint() * a_, nb = b_.adjoint() * b_;
        h_ = p.omega * (na + nb) + p.J * (a_.adjoint() * b_ + b_.adjoint() * a_);
        loss_ = na + nb; // sum of L^\dagger L
    }

    const FockSpace& space() const noexcept { return space_; }
    const DampedParams& params() const noexcept { return params_; }
    const Matrix& hamiltonian() const noexcept { return h_; }

    Matrix apply(const Matrix& rho) const {
        const cplx i{0.0, 1.0};
        Matrix out = -i * (h_ * rho - rho * h_);
        if (params_.gamma != 0.0)
            out += params_.gamma * (2.0 * (a_ * rho * a_.adjoint() + b_ * rho * b_.adjoint()) - loss_ * rho -
                                    rho * loss_);
        return out;
    }

    Matrix dissipator(const Matrix& rho) const {
        return params_.gamma * (2.0 * (a_ * rho * a_.adjoint() + b_ * rho * b_.adjoint()) - loss_ * rho - rho * loss_);
    }

private:
    FockSpace space_;
    DampedParams params_;
    Matrix a_, b_, h_, loss_;
};

inline Matrix liouvillian_apply(const TwoModeDensityMatrix& rho, const DampedParams& p) {
    return LindbladModel(rho.space(), p).apply(rho.matrix());
}

struct IntegratorConfig {
    double dt{1e-3};
    double t_max{1.0};
    int samples{2}; ///< uniform sample count over [0, t_max], endpoints included
    bool record_min_eigenvalue{true};

    void validate() const {
        if (!(dt > 0.0)) throw UsageError("integrator dt must be > 0");
        if (!(t_max >= 0.0)) throw UsageError("integrator t_max must be >= 0");
        if (samples < 2) throw UsageError("integrator needs at least 2 samples");
    }
};

/// dt <= 0.01 / max(omega, J, gamma, 1), shrunk further with the cutoff since the fastest
/// coherence in the sector of N photons oscillates at about 2 J N.
inline IntegratorConfig default_config(const DampedParams& p, int cutoff, double t_max, int samples = 2) {
    const double rate = std::max({p.omega, p.J, p.gamma, 1.0});
    return {0.01 / rate / std::max(cutoff, 1), t_max, samples, true};
}

struct Trajectory {
    std::vector<double> times;
    std::vector<TwoModeDensityMatrix> states;
    std::vector<double> trace_drift;
    std::vector<double> min_eigenvalue; ///< empty when not recorded
};

inline constexpr double kTraceDriftLimit = 1e-6;

namespace detail {

inline Matrix rk4_step(const LindbladModel& model, const Matrix& rho, double h) {
    const Matrix k1 = model.apply(rho);
    const Matrix k2 = model.apply(rho + 0.5 * h * k1);
    const Matrix k3 = model.apply(rho + 0.5 * h * k2);
    const Matrix k4 = model.apply(rho + h * k3);
    Matrix next = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return (next + next.adjoint()).eval() * 0.5;
}

} // namespace detail

/// Fixed-step RK4 through the given (non-decreasing) sample times, starting at times[0] with rho0.
/// Each interval between samples is split into equal steps no longer than dt.
inline Trajectory integrate(const TwoModeDensityMatrix& rho0, const DampedParams& p, double dt,
                            std::span<const double> times, bool record_min_eigenvalue = true) {
    if (!(dt > 0.0)) throw UsageError("integrator dt must be > 0");
    if (times.empty()) throw UsageError("integrator needs at least one sample time");
    const LindbladModel model(rho0.space(), p);
    Trajectory tr;
    Matrix rho = rho0.matrix();
    double now = times.front();
    for (double target : times) {
        if (target < now) throw UsageError("sample times must be non-decreasing");
        const double span = target - now;
        const int steps = span > 0.0 ? int(std::ceil(span / dt - 1e-9)) : 0;
        const double h = steps > 0 ? span / steps : 0.0;
        for (int s = 0; s < steps; ++s) rho = detail::rk4_step(model, rho, h);
        now = target;

        const double drift = std::abs(rho.trace().real() - 1.0);
        if (!(drift <= kTraceDriftLimit)) { // also catches a NaN from a diverged step
            std::ostringstream os;
            os << "trace drift " << drift << " at t = " << target << "; reduce dt (currently " << dt << ")";
            throw NumericalError(os.str());
        }
        // the propagated state keeps its drift; only the stored sample is rescaled
        Matrix sample = rho;
        sample /= sample.trace().real();
        TwoModeDensityMatrix state(rho0.space(), std::move(sample));
        tr.times.push_back(target);
        tr.trace_drift.push_back(drift);
        if (record_min_eigenvalue) tr.min_eigenvalue.push_back(state.min_eigenvalue());
        tr.states.push_back(std::move(state));
    }
    return tr;
}

inline std::vector<double> uniform_grid(double t_max, int samples) {
    std::vector<double> t(samples);
    for (int k = 0; k < samples; ++k) t[k] = samples == 1 ? 0.0 : t_max * k / (samples - 1);
    return t;
}

inline Trajectory integrate(const TwoModeDensityMatrix& rho0, const DampedParams& p, const IntegratorConfig& cfg) {
    cfg.validate();
    const auto grid = uniform_grid(cfg.t_max, cfg.samples);
    return integrate(rho0, p, cfg.dt, grid, cfg.record_min_eigenvalue);
}

/// Max elementwise change of the final state when dt is halved.
inline double convergence_delta(const TwoModeDensityMatrix& rho0, const DampedParams& p, const IntegratorConfig& cfg) {
    IntegratorConfig coarse = cfg, fine = cfg;
    coarse.samples = fine.samples = 2;
    coarse.record_min_eigenvalue = fine.record_min_eigenvalue = false;
    fine.dt = cfg.dt / 2;
    const auto a = integrate(rho0, p, coarse);
    const auto b = integrate(rho0, p, fine);
    return (a.states.back().matrix() - b.states.back().matrix()).cwiseAbs().maxCoeff();
}

// --- closed-form trajectories on the same grid -----------------------------------------------

inline Trajectory lossless_trajectory(const TwoModeDensityMatrix& rho0, const CouplerParams& p,
                                      std::span<const double> times) {
    Trajectory tr;
    for (double t : times) {
        tr.times.push_back(t);
        tr.states.push_back(evolve_lossless(rho0, p, t));
        tr.trace_drift.push_back(0.0);
    }
    return tr;
}

inline Trajectory damped_trajectory(const TwoModeDensityMatrix& rho0, const DampedParams& p,
                                    std::span<const double> times) {
    Trajectory tr;
    for (double t : times) {
        auto ev = propagate_damped(rho0, p, t);
        tr.times.push_back(t);
        tr.trace_drift.push_back(std::abs(ev.tail_estimate));
        tr.states.push_back(std::move(ev.rho));
    }
    return tr;
}

// --- comparison ---------------------------------------------------------------------------

struct DeviationSample {
    double t;
    double max_abs;         ///< max |rho_closed - rho_oracle| elementwise
    double trace_distance;  ///< (1/2) || rho_closed - rho_oracle ||_1
    double d_entropy;       ///< entanglement entropy of mode a (closed - oracle)
    double d_log_negativity;
    double d_purity;
};

struct DeviationReport {
    std::vector<DeviationSample> samples;

    double max_abs() const {
        double m = 0.0;
        for (const auto& s : samples) m = std::max(m, s.max_abs);
        return m;
    }
    double max_trace_distance() const {
        double m = 0.0;
        for (const auto& s : samples) m = std::max(m, s.trace_distance);
        return m;
    }
};

inline double trace_distance(const TwoModeDensityMatrix& x, const TwoModeDensityMatrix& y) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.matrix() - y.matrix(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed in trace distance");
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline DeviationReport compare(const Trajectory& closed, const Trajectory& oracle) {
    if (closed.times.size() != oracle.times.size())
        throw UsageError("trajectories have different sample counts");
    DeviationReport rep;
    for (std::size_t k = 0; k < closed.times.size(); ++k) {
        if (std::abs(closed.times[k] - oracle.times[k]) > 1e-12)
            throw UsageError("trajectory time grids differ at sample " + std::to_string(k));
        const auto& x = closed.states[k];
        const auto& y = oracle.states[k];
        if (!(x.space() == y.space())) throw UsageError("trajectories use different cutoffs");
        rep.samples.push_back({closed.times[k], (x.matrix() - y.matrix()).cwiseAbs().maxCoeff(), trace_distance(x, y),
                               entanglement_entropy(x).value - entanglement_entropy(y).value,
                               log_negativity(x).value - log_negativity(y).value, purity(x).value - purity(y).value});
    }
    return rep;
}

/// Debug export: t followed by Re/Im of rho in row-major order.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    if (tr.states.empty()) return;
    const auto dim = tr.states.front().space().dim();
    os << "t";
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) os << ",re_" << i << "_" << j << ",im_" << i << "_" << j;
    os << "\n";
    char buf[32];
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g", tr.times[k]);
        os << buf;
        const auto& m = tr.states[k].matrix();
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j) {
                std::snprintf(buf, sizeof buf, ",%.12g", m(i, j).real());
                os << buf;
                std::snprintf(buf, sizeof buf, ",%.12g", m(i, j).imag());
                os << buf;
            }
        os << "\n";
    }
}

} // namespace wg
