// tfd.hpp: damped coupler in the thermofield (doubled-space) picture
//
// In the doubled space a density matrix rho = sum rho_mn |m><n| becomes the vector
// sum rho_mn |m, n~>, and per normal mode the damped generator is an element of su(1,1)
// spanned by K+ = A^\dagger A~^\dagger, K- = A A~, K3 = (A^\dagger A + A~^\dagger A~ + 1)/2,
// plus the Casimir K0 = A^\dagger A - A~^\dagger A~. The disentangled form
//   exp(eta+ K+ + eta3 K3 + eta- K-) = exp(G+ K+) G3^{K3} exp(G- K-)
// turns the master equation into a finite sum over matrix elements.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "wg/errors.hpp"
#include "wg/fock.hpp"
#include "wg/math.hpp"
#include "wg/su2.hpp"

namespace wg {

struct DampedParams {
    double omega{0.0};
    double J{1.0};
    double gamma{0.0};

    void validate() const {
        if (!(J > 0.0)) throw UsageError("coupling J must be > 0");
        if (!(omega >= 0.0)) throw UsageError("omega must be >= 0");
        if (!(gamma >= 0.0)) throw UsageError("loss rate gamma must be >= 0");
    }

    CouplerParams coupler() const { return {omega, J}; }
};

// --- Bogoliubov parameters --------------------------------------------------------------

struct BogoliubovParams {
    cplx mu1, nu1, mu2, nu2;
    double r1{0.0}, r2{0.0};
    /// Normal-mode frequencies of the doubled Hamiltonian (informational).
    std::array<cplx, 4> Omega{};
    /// The cosh-branch closed forms; they satisfy mu^2 + nu^2 = 1 rather than the hyperbolic identity.
    double mu1_circular{1.0}, mu2_circular{1.0};
};

namespace detail {

struct Branch {
    double nu, r, mu, mu_circular;
};

inline Branch bogoliubov_branch(double detuning, double gamma) {
    const double denom2 = 2.0 * gamma * gamma + detuning * detuning; // |-i gamma +- sqrt(gamma^2 + d^2)|^2
    if (denom2 == 0.0) return {0.0, 0.0, 1.0, 1.0};
    const double nu = gamma / std::sqrt(denom2);
    const double r = std::asinh(nu);
    return {nu, r, std::cosh(r), std::sqrt((detuning * detuning + gamma * gamma) / denom2)};
}

} // namespace detail

inline BogoliubovParams bogoliubov_params(const DampedParams& p) {
    p.validate();
    const auto b1 = detail::bogoliubov_branch(p.omega - p.J, p.gamma);
    const auto b2 = detail::bogoliubov_branch(p.omega + p.J, p.gamma);
    BogoliubovParams out;
    out.mu1 = b1.mu;
    out.nu1 = b1.nu;
    out.r1 = b1.r;
    out.mu1_circular = b1.mu_circular;
    out.mu2 = b2.mu;
    out.nu2 = b2.nu;
    out.r2 = b2.r;
    out.mu2_circular = b2.mu_circular;
    const double root1 = std::sqrt(p.gamma * p.gamma + std::pow(p.omega - p.J, 2));
    const double root2 = std::sqrt(p.gamma * p.gamma + std::pow(p.omega + p.J, 2));
    const cplx half_loss{0.0, -p.gamma / 2};
    out.Omega = {-root1 / 2 + half_loss, root1 / 2 + half_loss, -root2 / 2 + half_loss, root2 / 2 + half_loss};
    return out;
}

// --- SU(1,1) disentangling ----------------------------------------------------------------

struct Su11Exponent {
    cplx eta_plus;
    cplx eta_3;
    cplx eta_minus;
};

struct DisentangleParams {
    cplx eta_minus, eta_3, eta_plus;
    cplx phi;
    cplx Gamma_plus, Gamma_3, Gamma_minus;
    /// 2 phi / (2 phi cosh phi - eta3 sinh phi); Gamma_3 is its square. Half-integer powers of
    /// Gamma_3 in the propagator are taken as integer powers of this root.
    cplx Gamma_3_root;
};

/// Gamma coefficients written through cosh(phi) and sinh(phi)/phi, both even in phi, so the
/// branch of the square root is irrelevant and phi -> 0 is regular.
inline DisentangleParams disentangle(const Su11Exponent& e) {
    const cplx phi2 = e.eta_3 * e.eta_3 / 4.0 - e.eta_plus * e.eta_minus;
    const cplx phi = std::sqrt(phi2);
    cplx ch, shc;
    if (std::abs(phi) < 1e-4) {
        ch = 1.0 + phi2 / 2.0 + phi2 * phi2 / 24.0;
        shc = 1.0 + phi2 / 6.0 + phi2 * phi2 / 120.0;
    } else {
        ch = std::cosh(phi);
        shc = std::sinh(phi) / phi;
    }
    const cplx den = 2.0 * ch - e.eta_3 * shc;
    DisentangleParams d;
    d.eta_minus = e.eta_minus;
    d.eta_3 = e.eta_3;
    d.eta_plus = e.eta_plus;
    d.phi = phi;
    d.Gamma_plus = 2.0 * e.eta_plus * shc / den;
    d.Gamma_minus = 2.0 * e.eta_minus * shc / den;
    d.Gamma_3_root = 2.0 / den;
    d.Gamma_3 = d.Gamma_3_root * d.Gamma_3_root;
    return d;
}

/// The closed-form exponents: eta- = gamma t, eta3 = -2(gamma + iJ) t, eta+ = -gamma t (same for A and B).
inline DisentangleParams disentangle_params(const DampedParams& p, double t) {
    p.validate();
    if (t < 0.0) throw UsageError("time must be >= 0");
    return disentangle({cplx{-p.gamma * t}, cplx{-2.0 * p.gamma * t, -2.0 * p.J * t}, cplx{p.gamma * t}});
}

/// Exponents of gamma (2 A rho A^\dagger - A^\dagger A rho - rho A^\dagger A) over a time t:
/// 2 gamma t K- - 2 gamma t K3 plus the scalar gamma t.
inline Su11Exponent lossy_mode_exponent(double gamma, double t) {
    return {cplx{}, cplx{-2.0 * gamma * t}, cplx{2.0 * gamma * t}};
}

// --- single-mode propagator ----------------------------------------------------------------

struct ModeChannel {
    DisentangleParams factors;
    cplx scalar{1.0};
    double frequency{0.0}; ///< Casimir phase exp(-i frequency (m - n) t)
    double t{0.0};
};

namespace detail {

inline cplx ipow(cplx z, int k) {
    cplx r{1.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

} // namespace detail

/// Acts on single-mode coefficients x(m, n), m, n <= nmax:
///   y(m,n) = scalar e^{-i w (m-n) t} sum_{p <= min(m,n)} sum_{q >= 0}
///            G+^p G3^{(m+n-2p+1)/2} G-^q [C(m,p) C(n,p) C(m-p+q,q) C(n-p+q,q)]^{1/2} x(m-p+q, n-p+q)
/// Terms whose source index exceeds nmax are dropped.
inline Matrix apply_mode_channel(const ModeChannel& ch, const Matrix& x) {
    const int nmax = int(x.rows()) - 1;
    const auto& f = ch.factors;
    Matrix y = Matrix::Zero(x.rows(), x.cols());
    for (int m = 0; m <= nmax; ++m)
        for (int n = 0; n <= nmax; ++n) {
            cplx acc{};
            for (int p = 0; p <= std::min(m, n); ++p) {
                const cplx gp = detail::ipow(f.Gamma_plus, p) * detail::ipow(f.Gamma_3_root, m + n - 2 * p + 1);
                if (gp == cplx{}) continue;
                const double wp = std::sqrt(binomial(m, p) * binomial(n, p));
                cplx gq{1.0};
                for (int q = 0; m - p + q <= nmax && n - p + q <= nmax; ++q, gq *= f.Gamma_minus) {
                    if (q > 0 && gq == cplx{}) break;
                    const double wq = std::sqrt(binomial(m - p + q, q) * binomial(n - p + q, q));
                    acc += gp * gq * wp * wq * x(m - p + q, n - p + q);
                }
            }
            y(m, n) = ch.scalar * std::exp(cplx{0.0, -ch.frequency * (m - n) * ch.t}) * acc;
        }
    return y;
}

// --- normal-mode rotation ---------------------------------------------------------------

/// Orthogonal change of basis from |n_a, n_b> to normal-mode states |n_A, n_B> with
/// a = (A + B)/sqrt2, b = (-A + B)/sqrt2. Entry (i, j) = <i_AB | j_ab>, block diagonal in N.
inline Eigen::MatrixXd normal_mode_rotation(const FockSpace& space) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(space.dim(), space.dim());
    for (Eigen::Index col = 0; col < space.dim(); ++col) {
        const auto [na, nb] = space.state(col);
        const int N = na + nb;
        const double pre = std::pow(2.0, -0.5 * N) / std::sqrt(factorial(na) * factorial(nb));
        for (int i = 0; i <= na; ++i)
            for (int j = 0; j <= nb; ++j) {
                const int k = i + j; // power of A^\dagger
                const double sign = (j % 2) ? -1.0 : 1.0;
                u(space.index(k, N - k), col) +=
                    pre * sign * binomial(na, i) * binomial(nb, j) * std::sqrt(factorial(k) * factorial(N - k));
            }
    }
    return u;
}

// --- two-mode damped propagator ---------------------------------------------------------

struct DampedEvolution {
    TwoModeDensityMatrix rho;
    double tail_estimate{0.0}; ///< probability lost to the cutoff before renormalization
};

inline std::array<ModeChannel, 2> normal_mode_channels(const DampedParams& p, double t) {
    const auto f = disentangle(lossy_mode_exponent(p.gamma, t));
    const cplx scalar{std::exp(p.gamma * t)};
    return {ModeChannel{f, scalar, p.omega - p.J, t}, ModeChannel{f, scalar, p.omega + p.J, t}};
}

/// Applies independent channels to modes A and B of an operator given in the normal-mode basis.
inline Matrix apply_two_mode_channel(const FockSpace& space, const ModeChannel& chA, const ModeChannel& chB,
                                     const Matrix& x) {
    const int n = space.cutoff() + 1;
    // box tensor T[mA][mB][nA][nB]
    std::vector<cplx> tensor(std::size_t(n) * n * n * n, cplx{});
    auto at = [n](int mA, int mB, int nA, int nB) { return ((std::size_t(mA) * n + mB) * n + nA) * n + nB; };
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const auto r = space.state(i);
        for (Eigen::Index j = 0; j < space.dim(); ++j) {
            const auto c = space.state(j);
            tensor[at(r.n_a, r.n_b, c.n_a, c.n_b)] = x(i, j);
        }
    }
    Matrix slice(n, n);
    for (int mB = 0; mB < n; ++mB)
        for (int nB = 0; nB < n; ++nB) {
            for (int mA = 0; mA < n; ++mA)
                for (int nA = 0; nA < n; ++nA) slice(mA, nA) = tensor[at(mA, mB, nA, nB)];
            const Matrix out = apply_mode_channel(chA, slice);
            for (int mA = 0; mA < n; ++mA)
                for (int nA = 0; nA < n; ++nA) tensor[at(mA, mB, nA, nB)] = out(mA, nA);
        }
    for (int mA = 0; mA < n; ++mA)
        for (int nA = 0; nA < n; ++nA) {
            for (int mB = 0; mB < n; ++mB)
                for (int nB = 0; nB < n; ++nB) slice(mB, nB) = tensor[at(mA, mB, nA, nB)];
            const Matrix out = apply_mode_channel(chB, slice);
            for (int mB = 0; mB < n; ++mB)
                for (int nB = 0; nB < n; ++nB) tensor[at(mA, mB, nA, nB)] = out(mB, nB);
        }
    Matrix y(space.dim(), space.dim());
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const auto r = space.state(i);
        for (Eigen::Index j = 0; j < space.dim(); ++j) {
            const auto c = space.state(j);
            y(i, j) = tensor[at(r.n_a, r.n_b, c.n_a, c.n_b)];
        }
    }
    return y;
}

/// Exact damped evolution through the disentangled propagator in the normal-mode basis.
/// Throws TruncationError when more than tail_tolerance of the trace falls outside the cutoff.
inline DampedEvolution propagate_damped(const TwoModeDensityMatrix& rho0, const DampedParams& p, double t,
                                        double tail_tolerance = 1e-8) {
    p.validate();
    if (t < 0.0) throw UsageError("time must be >= 0");
    const auto& space = rho0.space();
    const Matrix u = normal_mode_rotation(space).cast<cplx>();
    const auto [chA, chB] = normal_mode_channels(p, t);
    const Matrix x = u * rho0.matrix() * u.adjoint();
    const Matrix y = apply_two_mode_channel(space, chA, chB, x);
    const double tail = 1.0 - y.trace().real();
    if (std::abs(tail) > tail_tolerance) throw TruncationError("damped propagator lost trace at the cutoff", tail);
    return {normalized_density(space, u.adjoint() * y * u), tail};
}

inline TwoModeDensityMatrix evolve_damped_exact(const TwoModeDensityMatrix& rho0, const DampedParams& p, double t) {
    return propagate_damped(rho0, p, t).rho;
}

// --- closed-form damped spectra, entropy and purity ----------------------------------------------

/// theta = (sqrt2 gamma + iJ) t
inline cplx damped_theta(const DampedParams& p, double t) {
    return cplx{std::sqrt(2.0) * p.gamma * t, p.J * t};
}

/// Complex-theta closed-form PT spectrum reduced to magnitudes and rescaled so the diagonal family sums to 1.
inline PtSpectrum damped_pt_spectrum(int N, const DampedParams& p, double t) {
    if (N < 1) throw UsageError("damped_pt_spectrum needs N >= 1");
    p.validate();
    const cplx th = damped_theta(p, t);
    const double sh = std::abs(std::sinh(th)), ch = std::abs(std::cosh(th));
    PtSpectrum out;
    out.diagonal.resize(N + 1);
    double total = 0.0;
    for (int n = 0; n <= N; ++n) {
        out.diagonal[n] = binomial(N, n) * std::pow(sh, 2 * n) * std::pow(ch, 2 * N - 2 * n);
        total += out.diagonal[n];
    }
    for (double& l : out.diagonal) l /= total;
    for (int n = 0; n <= N; ++n)
        for (int m = n + 1; m <= N; ++m) {
            const double w = factorial(N) / std::sqrt(factorial(N - n) * factorial(N - m) * factorial(n) * factorial(m));
            out.pairs.push_back({n, m, w * std::pow(sh, n + m) * std::pow(ch, 2 * N - n - m) / total});
        }
    return out;
}

inline MeasureValue damped_entropy(int N, const DampedParams& p, double t) {
    const auto lambda = damped_pt_spectrum(N, p, t).diagonal;
    return {MeasureKind::entropy, shannon_bits(lambda)};
}

enum class PurityVariant {
    as_printed,   ///< denominator term (gamma + iJt)
    rate_times_t  ///< denominator term (gamma + iJ) t
};

/// Closed-form Tr rho^2: real part, clamped to (0, 1].
inline MeasureValue purity_closed(const DampedParams& p, double t, PurityVariant variant = PurityVariant::as_printed) {
    p.validate();
    if (t < 0.0) throw UsageError("time must be >= 0");
    if (t == 0.0 || p.gamma == 0.0) return {MeasureKind::purity, 1.0};
    const cplx th = damped_theta(p, t);
    const cplx mix = variant == PurityVariant::as_printed ? cplx{p.gamma, p.J * t} : cplx{p.gamma, p.J} * t;
    const cplx arg = -4.0 * p.gamma * t * std::sinh(th) / (th * std::cosh(th) + mix * std::sinh(th));
    const double re = std::exp(arg).real();
    return {MeasureKind::purity, std::clamp(re, std::numeric_limits<double>::min(), 1.0)};
}

} // namespace wg
