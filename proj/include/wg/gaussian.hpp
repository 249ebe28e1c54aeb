// gaussian.hpp: two-mode covariance matrices, Simon separability and Gaussian log negativity
//
// Quadrature ordering (x, p_x, y, p_y); vacuum variance 1/2 per quadrature.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>

#include "wg/errors.hpp"
#include "wg/fock.hpp"
#include "wg/tfd.hpp"

namespace wg {

using Matrix4 = Eigen::Matrix4d;
using Matrix2 = Eigen::Matrix2d;

inline Matrix4 symplectic_form() {
    Matrix4 s = Matrix4::Zero();
    s(0, 1) = s(2, 3) = 1.0;
    s(1, 0) = s(3, 2) = -1.0;
    return s;
}

class GaussianState {
public:
    explicit GaussianState(const Matrix4& v) : v_(v) {
        if ((v_ - v_.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw ValidityError("covariance matrix not symmetric");
    }

    static GaussianState vacuum() { return GaussianState(0.5 * Matrix4::Identity()); }

    /// Two-mode squeezed vacuum in the same sign convention as covariance_vacuum_evolved.
    static GaussianState tmsv(double r) {
        Matrix4 v = 0.5 * std::cosh(2 * r) * Matrix4::Identity();
        v(0, 2) = v(2, 0) = -0.5 * std::sinh(2 * r);
        v(1, 3) = v(3, 1) = 0.5 * std::sinh(2 * r);
        return GaussianState(v);
    }

    const Matrix4& matrix() const noexcept { return v_; }
    Matrix2 alpha() const { return v_.block<2, 2>(0, 0); }
    Matrix2 beta() const { return v_.block<2, 2>(2, 2); }
    Matrix2 gamma() const { return v_.block<2, 2>(0, 2); }

    /// Smallest eigenvalue of V + (i/2) Sigma; >= 0 for a physical state.
    double uncertainty_margin() const {
        const Eigen::Matrix4cd m = v_.cast<cplx>() + cplx{0.0, 0.5} * symplectic_form().cast<cplx>();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    bool is_physical(double tol = 1e-9) const { return uncertainty_margin() >= -tol; }

private:
    Matrix4 v_;
};

/// How loss acts on the closed-form covariance entries.
enum class LossModel {
    pure_loss, ///< entries scaled by e^{-2 gamma t} plus (1 - e^{-2 gamma t}) vacuum noise
    as_printed ///< entries scaled by e^{-2 gamma t} only; becomes unphysical for gamma t > 0
};

namespace detail {

inline GaussianState assemble(double diag, double corr_x, double corr_p, double eta, LossModel loss) {
    // closed-form entries are in units where the vacuum reads 2; rescale by 1/4
    Matrix4 v = Matrix4::Zero();
    v(0, 0) = v(1, 1) = v(2, 2) = v(3, 3) = diag / 4.0;
    v(0, 2) = v(2, 0) = corr_x / 4.0;
    v(1, 3) = v(3, 1) = corr_p / 4.0;
    if (loss == LossModel::pure_loss) v += 0.5 * (1.0 - eta) * Matrix4::Identity();
    return GaussianState(v);
}

} // namespace detail

/// Covariance of the evolved two-mode vacuum, traced over the tilde modes. The e^{2iJt}
/// phases of the diagonal entries are local rotations and enter through their magnitude.
inline GaussianState covariance_vacuum_evolved(double r1, double r2, const DampedParams& p, double t,
                                               LossModel loss = LossModel::pure_loss) {
    if (r1 < 0.0 || r2 < 0.0) throw UsageError("squeezing parameters must be >= 0");
    p.validate();
    const double eta = std::exp(-2.0 * p.gamma * t);
    const double pq = eta * (std::cosh(2 * r1) + std::cosh(2 * r2));
    const double st = eta * (std::sinh(2 * r1) + std::sinh(2 * r2));
    return detail::assemble(pq, -st, st, eta, loss);
}

/// Thermal counterpart; n1, n2 are mean occupations entering through the noise factor 2 nbar + 1,
/// so n1 = n2 = 0 reproduces covariance_vacuum_evolved up to the sign of the correlations.
inline GaussianState covariance_thermal_evolved(double n1, double n2, double r1, double r2, const DampedParams& p,
                                                double t, LossModel loss = LossModel::pure_loss) {
    if (n1 < 0.0 || n2 < 0.0) throw UsageError("thermal occupations must be >= 0");
    if (r1 < 0.0 || r2 < 0.0) throw UsageError("squeezing parameters must be >= 0");
    p.validate();
    const double k1 = 2.0 * n1 + 1.0, k2 = 2.0 * n2 + 1.0;
    const double eta = std::exp(-2.0 * p.gamma * t);
    const double c = eta * (k1 * std::pow(std::cosh(r1), 2) + k2 * std::pow(std::sinh(r1), 2));
    const double d = eta * (k1 * std::pow(std::sinh(r2), 2) + k2 * std::pow(std::cosh(r2), 2));
    const double e = 0.5 * (k1 + k2) * eta * std::sinh(2 * r1);
    const double f = 0.5 * (k1 + k2) * eta * std::sinh(2 * r2);
    return detail::assemble(c + d, e + f, -(e + f), eta, loss);
}

struct SimonReport {
    double lhs;
    double rhs;
    bool separable;
};

inline constexpr double kSimonTolerance = 1e-12;

inline SimonReport simon_separable(const GaussianState& g) {
    const Matrix2 a = g.alpha(), b = g.beta(), c = g.gamma();
    Matrix2 j;
    j << 0.0, 1.0, -1.0, 0.0;
    const double da = a.determinant(), db = b.determinant(), dc = c.determinant();
    const double lhs = da * db + std::pow(0.25 - std::abs(dc), 2) - (a * j * c * j * b * j * c.transpose() * j).trace();
    const double rhs = 0.25 * (da + db);
    return {lhs, rhs, lhs >= rhs - kSimonTolerance};
}

struct SymplecticSpectrum {
    double nu_plus;
    double nu_minus;
};

inline SymplecticSpectrum symplectic_spectrum(const GaussianState& g, bool partial_transposed) {
    const double da = g.alpha().determinant(), db = g.beta().determinant(), dc = g.gamma().determinant();
    const double delta = da + db + (partial_transposed ? -2.0 : 2.0) * dc;
    const double det_v = g.matrix().determinant();
    double disc = delta * delta - 4.0 * det_v;
    if (disc < -1e-10) {
        std::ostringstream os;
        os << "covariance matrix is unphysical: symplectic discriminant " << disc;
        throw NumericalError(os.str());
    }
    disc = std::max(disc, 0.0);
    const double hi = 0.5 * (delta + std::sqrt(disc));
    if (!(hi > 0.0)) throw NumericalError("covariance matrix is unphysical: non-positive symplectic invariant");
    // nu+^2 nu-^2 = det V; avoids the cancellation in delta - sqrt(disc)
    const double lo = det_v / hi;
    if (lo < -1e-10) throw NumericalError("covariance matrix is unphysical: negative symplectic invariant");
    return {std::sqrt(hi), std::sqrt(std::max(lo, 0.0))};
}

/// E_N = max{0, -log2(2 nu~-)} from the partially transposed symplectic spectrum.
inline MeasureValue gaussian_log_negativity(const GaussianState& g) {
    const double nu = symplectic_spectrum(g, true).nu_minus;
    const double e = -std::log2(2.0 * nu);
    return {MeasureKind::log_negativity, e > kSimonTolerance ? e : 0.0};
}

} // namespace wg
