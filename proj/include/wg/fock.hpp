// fock.hpp: truncated two-mode Fock space, states, and entanglement/decoherence measures
//
// The space holds every |n_a, n_b> with n_a + n_b <= cutoff, ordered lexicographically
// in (n_a, n_b). Partial transposes do not stay inside that triangle, so they live on the
// enclosing "box" n_a, n_b <= cutoff (index n_a * (cutoff + 1) + n_b).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wg/errors.hpp"
#include "wg/math.hpp"
#include "wg/state_spec.hpp"

namespace wg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kDefaultCutoff = 10;

struct FockIndex {
    int n_a{0};
    int n_b{0};
    bool operator==(const FockIndex&) const = default;
};

enum class Mode { a, b };

class FockSpace {
public:
    explicit FockSpace(int cutoff = kDefaultCutoff) : cutoff_(cutoff) {
        if (cutoff < 0) throw CapacityError("cutoff must be non-negative");
    }

    int cutoff() const noexcept { return cutoff_; }
    Eigen::Index dim() const noexcept { return Eigen::Index(cutoff_ + 1) * (cutoff_ + 2) / 2; }
    Eigen::Index box_dim() const noexcept { return Eigen::Index(cutoff_ + 1) * (cutoff_ + 1); }

    bool contains(int n_a, int n_b) const noexcept {
        return n_a >= 0 && n_b >= 0 && n_a + n_b <= cutoff_;
    }

    Eigen::Index index(int n_a, int n_b) const {
        if (!contains(n_a, n_b))
            throw CapacityError("|" + std::to_string(n_a) + "," + std::to_string(n_b) +
                                "> exceeds cutoff " + std::to_string(cutoff_));
        return offset(n_a) + n_b;
    }

    FockIndex state(Eigen::Index i) const {
        int n_a = 0;
        while (offset(n_a + 1) <= i) ++n_a;
        return {n_a, int(i - offset(n_a))};
    }

    Eigen::Index box_index(int n_a, int n_b) const noexcept {
        return Eigen::Index(n_a) * (cutoff_ + 1) + n_b;
    }

    /// Annihilation operator of one mode; a^\dagger is its adjoint (truncated at the cutoff).
    Matrix annihilation(Mode m) const {
        Matrix op = Matrix::Zero(dim(), dim());
        for (Eigen::Index i = 0; i < dim(); ++i) {
            auto [na, nb] = state(i);
            if (m == Mode::a && na > 0) op(index(na - 1, nb), i) = std::sqrt(double(na));
            if (m == Mode::b && nb > 0) op(index(na, nb - 1), i) = std::sqrt(double(nb));
        }
        return op;
    }

    bool operator==(const FockSpace&) const = default;

private:
    Eigen::Index offset(int n_a) const noexcept {
        return Eigen::Index(n_a) * (cutoff_ + 1) - Eigen::Index(n_a) * (n_a - 1) / 2;
    }

    int cutoff_;
};

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;

class TwoModePureState {
public:
    TwoModePureState(FockSpace space, Vector amplitudes)
        : space_(space), amp_(std::move(amplitudes)) {
        if (amp_.size() != space_.dim()) throw ValidityError("amplitude vector has wrong dimension");
        if (std::abs(amp_.squaredNorm() - 1.0) > kNormTolerance)
            throw ValidityError("pure state is not normalized (norm^2 = " +
                                std::to_string(amp_.squaredNorm()) + ")");
    }

    const FockSpace& space() const noexcept { return space_; }
    const Vector& amplitudes() const noexcept { return amp_; }
    cplx amplitude(int n_a, int n_b) const { return amp_(space_.index(n_a, n_b)); }

    /// Amplitudes arranged as a matrix c(n_a, n_b) on the box; its singular values are the Schmidt coefficients.
    Matrix amplitude_matrix() const {
        const int n = space_.cutoff() + 1;
        Matrix c = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < amp_.size(); ++i) {
            auto [na, nb] = space_.state(i);
            c(na, nb) = amp_(i);
        }
        return c;
    }

private:
    FockSpace space_;
    Vector amp_;
};

class TwoModeDensityMatrix {
public:
    TwoModeDensityMatrix(FockSpace space, Matrix entries) : space_(space), rho_(std::move(entries)) {
        if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim())
            throw ValidityError("density matrix has wrong dimension");
        const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
        if (herm > kHermitianTolerance)
            throw ValidityError("density matrix is not Hermitian (residual " + std::to_string(herm) + ")");
        const cplx tr = rho_.trace();
        if (std::abs(tr - 1.0) > kTraceTolerance)
            throw ValidityError("density matrix trace is " + std::to_string(tr.real()));
    }

    explicit TwoModeDensityMatrix(const TwoModePureState& psi)
        : TwoModeDensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint()) {}

    const FockSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return rho_; }
    cplx operator()(FockIndex row, FockIndex col) const {
        return rho_(space_.index(row.n_a, row.n_b), space_.index(col.n_a, col.n_b));
    }

    Eigen::VectorXd eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed on density matrix");
        return es.eigenvalues();
    }

    double min_eigenvalue() const { return eigenvalues().minCoeff(); }

    /// Full check including positivity; the constructor only checks Hermiticity and trace.
    void validate() const {
        const double lo = min_eigenvalue();
        if (lo < -kClampTolerance)
            throw ValidityError("density matrix has eigenvalue " + std::to_string(lo));
    }

private:
    FockSpace space_;
    Matrix rho_;
};

/// Hermitize and rescale to unit trace, for matrices produced by numerical propagation.
inline TwoModeDensityMatrix normalized_density(const FockSpace& space, Matrix m) {
    m = (m + m.adjoint()).eval() * 0.5;
    m /= m.trace().real();
    return TwoModeDensityMatrix(space, std::move(m));
}

// --- state construction -----------------------------------------------------------------

inline TwoModePureState make_pure_state(const StateSpec& spec, int cutoff = kDefaultCutoff) {
    FockSpace space(cutoff);
    Vector amp = Vector::Zero(space.dim());
    if (auto f = std::get_if<FockSpec>(&spec)) {
        amp(space.index(f->n_a, f->n_b)) = 1.0;
    } else if (auto n = std::get_if<NoonSpec>(&spec)) {
        const double h = 1.0 / std::sqrt(2.0);
        amp(space.index(n->N, 0)) += h;
        amp(space.index(0, n->N)) += h;
        amp.normalize(); // noon(0) collapses onto the vacuum
    } else if (auto s = std::get_if<TmsvSpec>(&spec)) {
        const double lambda = std::tanh(s->r);
        double w = 1.0;
        for (int k = 0; 2 * k <= cutoff; ++k, w *= lambda) amp(space.index(k, k)) = w;
        amp.normalize();
    } else {
        throw UsageError("thermal inputs are mixed states; use the thermal-state functions");
    }
    return TwoModePureState(space, std::move(amp));
}

inline TwoModeDensityMatrix make_density(const StateSpec& spec, int cutoff = kDefaultCutoff) {
    return TwoModeDensityMatrix(make_pure_state(spec, cutoff));
}

// --- measures ---------------------------------------------------------------------------

enum class MeasureKind { entropy, log_negativity, negativity, purity };

struct MeasureValue {
    MeasureKind kind;
    double value;
};

/// rho embedded on the (cutoff+1)^2 product box.
inline Matrix embed_in_box(const TwoModeDensityMatrix& rho) {
    const auto& sp = rho.space();
    Matrix box = Matrix::Zero(sp.box_dim(), sp.box_dim());
    for (Eigen::Index i = 0; i < sp.dim(); ++i) {
        auto r = sp.state(i);
        for (Eigen::Index j = 0; j < sp.dim(); ++j) {
            auto c = sp.state(j);
            box(sp.box_index(r.n_a, r.n_b), sp.box_index(c.n_a, c.n_b)) = rho.matrix()(i, j);
        }
    }
    return box;
}

/// Transpose on mode b of a box matrix: <n_a, m_b| X^PT |m_a, n_b> = <n_a, n_b| X |m_a, m_b>.
inline Matrix partial_transpose_box(const Matrix& box, int cutoff) {
    const int n = cutoff + 1;
    Matrix pt(box.rows(), box.cols());
    for (int na = 0; na < n; ++na)
        for (int nb = 0; nb < n; ++nb)
            for (int ma = 0; ma < n; ++ma)
                for (int mb = 0; mb < n; ++mb)
                    pt(na * n + mb, ma * n + nb) = box(na * n + nb, ma * n + mb);
    return pt;
}

inline Matrix partial_transpose(const TwoModeDensityMatrix& rho) {
    return partial_transpose_box(embed_in_box(rho), rho.space().cutoff());
}

namespace detail {

/// Eigenvalues of a Hermitian matrix, solved per connected block of its sparsity graph.
inline std::vector<double> blockwise_eigenvalues(const Matrix& m) {
    const Eigen::Index n = m.rows();
    std::vector<Eigen::Index> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Eigen::Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (m(i, j) != cplx{}) parent[find(i)] = find(j);

    std::vector<std::vector<Eigen::Index>> blocks(n);
    for (Eigen::Index i = 0; i < n; ++i) blocks[find(i)].push_back(i);

    std::vector<double> out;
    out.reserve(n);
    for (const auto& idx : blocks) {
        if (idx.empty()) continue;
        const auto k = Eigen::Index(idx.size());
        Matrix sub(k, k);
        for (Eigen::Index r = 0; r < k; ++r)
            for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m(idx[r], idx[c]);
        Eigen::SelfAdjointEigenSolver<Matrix> es(sub, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            std::ostringstream os;
            os << "eigensolver did not converge on a " << k << "x" << k
               << " block (max |entry| = " << sub.cwiseAbs().maxCoeff() << ")";
            throw NumericalError(os.str());
        }
        for (Eigen::Index r = 0; r < k; ++r) out.push_back(es.eigenvalues()(r));
    }
    return out;
}

} // namespace detail

/// Eigenvalues of the partial transpose, descending.
inline std::vector<double> pt_eigenvalues(const TwoModeDensityMatrix& rho) {
    auto ev = detail::blockwise_eigenvalues(partial_transpose(rho));
    sort_descending(ev);
    return ev;
}

inline double negativity(const TwoModeDensityMatrix& rho) {
    double n = 0.0;
    for (double l : pt_eigenvalues(rho))
        if (l < 0.0) n -= l;
    return n;
}

/// Log negativity in bits: log2 of the PT trace norm, 1 + 2 N(rho) for unit-trace rho.
inline MeasureValue log_negativity(const TwoModeDensityMatrix& rho) {
    return {MeasureKind::log_negativity, std::log2(1.0 + 2.0 * negativity(rho))};
}

inline Matrix reduced_state(const TwoModeDensityMatrix& rho, Mode keep) {
    const auto& sp = rho.space();
    const int n = sp.cutoff() + 1;
    Matrix red = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < sp.dim(); ++i) {
        auto r = sp.state(i);
        for (Eigen::Index j = 0; j < sp.dim(); ++j) {
            auto c = sp.state(j);
            if (keep == Mode::a && r.n_b == c.n_b) red(r.n_a, c.n_a) += rho.matrix()(i, j);
            if (keep == Mode::b && r.n_a == c.n_a) red(r.n_b, c.n_b) += rho.matrix()(i, j);
        }
    }
    return red;
}

inline MeasureValue von_neumann_entropy(const Matrix& sigma) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed on reduced state");
    const Eigen::VectorXd& ev = es.eigenvalues();
    return {MeasureKind::entropy, shannon_bits(std::span<const double>(ev.data(), std::size_t(ev.size())))};
}

inline MeasureValue entanglement_entropy(const TwoModeDensityMatrix& rho, Mode keep = Mode::a) {
    return von_neumann_entropy(reduced_state(rho, keep));
}

inline MeasureValue purity(const TwoModeDensityMatrix& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return {MeasureKind::purity, rho.matrix().cwiseAbs2().sum()};
}

} // namespace wg
