// su2.hpp: lossless coupler evolution and its closed-form SU(2) spectra
//
// The coupler Hamiltonian H = omega (a^\dagger a + b^\dagger b) + J (L+ + L-) with
// L+ = a^\dagger b, L- = b^\dagger a conserves N = n_a + n_b, so evolution is block diagonal
// over photon-number sectors. Each sector is propagated by exact diagonalization of J (L+ + L-).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wg/errors.hpp"
#include "wg/fock.hpp"
#include "wg/math.hpp"

namespace wg {

struct CouplerParams {
    double omega{0.0};
    double J{1.0};

    void validate() const {
        if (!(J > 0.0)) throw UsageError("coupling J must be > 0");
        if (!(omega >= 0.0)) throw UsageError("omega must be >= 0");
    }
};

/// alpha(t) = iJt and the disentangled parameter xi = alpha tan|alpha| / |alpha|.
struct Su2RotationParam {
    cplx alpha;
    cplx xi;
};

inline Su2RotationParam su2_rotation(double Jt) {
    const cplx alpha{0.0, Jt};
    const double mag = std::abs(alpha);
    const cplx xi = mag == 0.0 ? cplx{} : alpha * std::tan(mag) / mag;
    return {alpha, xi};
}

/// L+ + L- restricted to the sector n_a + n_b = N, basis |n_a, N - n_a> with n_a = 0..N.
inline Eigen::MatrixXd su2_sector_generator(int N) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int na = 0; na < N; ++na) {
        const double v = std::sqrt(double(na + 1) * (N - na));
        g(na + 1, na) = v;
        g(na, na + 1) = v;
    }
    return g;
}

/// exp(-iHt) on the whole truncated space; unitary and block diagonal in N.
inline Matrix lossless_propagator(const FockSpace& space, const CouplerParams& p, double t) {
    p.validate();
    Matrix u = Matrix::Zero(space.dim(), space.dim());
    for (int N = 0; N <= space.cutoff(); ++N) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(su2_sector_generator(N));
        if (es.info() != Eigen::Success) throw NumericalError("sector eigensolver failed");
        const Eigen::MatrixXd& v = es.eigenvectors();
        Eigen::VectorXcd phase(N + 1);
        for (int k = 0; k <= N; ++k)
            phase(k) = std::exp(cplx{0.0, -(p.J * es.eigenvalues()(k) + p.omega * N) * t});
        const Matrix block = v.cast<cplx>() * phase.asDiagonal() * v.transpose().cast<cplx>();
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j) u(space.index(i, N - i), space.index(j, N - j)) = block(i, j);
    }
    return u;
}

inline TwoModePureState evolve_lossless(const TwoModePureState& input, const CouplerParams& p, double t) {
    Vector out = lossless_propagator(input.space(), p, t) * input.amplitudes();
    out.normalize();
    return TwoModePureState(input.space(), std::move(out));
}

inline TwoModeDensityMatrix evolve_lossless(const TwoModeDensityMatrix& rho, const CouplerParams& p, double t) {
    const Matrix u = lossless_propagator(rho.space(), p, t);
    return normalized_density(rho.space(), u * rho.matrix() * u.adjoint());
}

/// SU(2) coherent-state coefficients C_{n_a}, n_a = 0..N, in the xi form.
/// Jt must lie in [0, pi/2]; pi/2 is taken as the limit where all weight sits on n_a = N.
inline std::vector<cplx> su2_coefficients(int N, double Jt) {
    if (N < 0) throw UsageError("N must be >= 0");
    constexpr double half_pi = std::numbers::pi / 2;
    if (Jt < 0.0 || Jt > half_pi) throw UsageError("su2_coefficients needs Jt in [0, pi/2]");
    std::vector<cplx> c(N + 1);
    if (half_pi - Jt < 1e-12) {
        // xi^N / (1 + |xi|^2)^{N/2} -> (xi/|xi|)^N = i^N
        c[N] = std::pow(cplx{0.0, 1.0}, N);
        return c;
    }
    const cplx xi = su2_rotation(Jt).xi;
    const double norm = std::pow(1.0 + std::norm(xi), 0.5 * N);
    for (int n = 0; n <= N; ++n) c[n] = std::pow(xi, n) / norm * std::sqrt(binomial(N, n));
    return c;
}

/// PT eigenvalues of the SU(2) coherent state: the diagonal family lambda_{nn} and the
/// +/- pair family lambda_{nm} (n < m, each appearing once with both signs).
struct PtPair {
    int n;
    int m;
    double magnitude;
};

struct PtSpectrum {
    std::vector<double> diagonal; // indexed by n_a
    std::vector<PtPair> pairs;

    /// Multiset of all eigenvalues, descending.
    std::vector<double> all() const {
        std::vector<double> v(diagonal);
        for (const auto& pr : pairs) {
            v.push_back(pr.magnitude);
            v.push_back(-pr.magnitude);
        }
        sort_descending(v);
        return v;
    }
};

inline PtSpectrum pt_spectrum_closed(int N, double Jt) {
    if (N < 1) throw UsageError("pt_spectrum_closed needs N >= 1");
    const double s = std::sin(Jt), c = std::cos(Jt);
    PtSpectrum out;
    out.diagonal.resize(N + 1);
    for (int n = 0; n <= N; ++n)
        out.diagonal[n] = binomial(N, n) * std::pow(s, 2 * n) * std::pow(c, 2 * N - 2 * n);
    for (int n = 0; n <= N; ++n)
        for (int m = n + 1; m <= N; ++m) {
            const double w = factorial(N) / std::sqrt(factorial(N - n) * factorial(N - m) * factorial(n) * factorial(m));
            out.pairs.push_back({n, m, std::abs(w * std::pow(s, n + m) * std::pow(c, 2 * N - n - m))});
        }
    return out;
}

/// Entanglement entropy (bits) of the N-photon SU(2) coherent state: binomial-distribution entropy.
inline MeasureValue entropy_closed(int N, double Jt) {
    if (N < 1) throw UsageError("entropy_closed needs N >= 1");
    const auto lambda = pt_spectrum_closed(N, Jt).diagonal;
    return {MeasureKind::entropy, shannon_bits(lambda)};
}

/// E_N of an evolved NOON state via the generic partial-transpose route.
inline MeasureValue noon_log_negativity(int N, double Jt, int cutoff = -1) {
    if (N < 2) throw UsageError("noon_log_negativity needs N >= 2");
    if (cutoff < 0) cutoff = N;
    const auto psi = make_pure_state(NoonSpec{N}, cutoff);
    const CouplerParams p{0.0, 1.0};
    return log_negativity(TwoModeDensityMatrix(evolve_lossless(psi, p, Jt)));
}

} // namespace wg
