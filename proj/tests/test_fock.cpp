#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wg/fock.hpp"
#include "wg/math.hpp"
#include "wg/state_spec.hpp"
#include "wg/su2.hpp"

using namespace wg;
using Catch::Matchers::WithinAbs;

namespace {

TwoModePureState bell01(int cutoff) {
    FockSpace sp(cutoff);
    Vector v = Vector::Zero(sp.dim());
    v(sp.index(0, 1)) = v(sp.index(1, 0)) = 1.0 / std::sqrt(2.0);
    return TwoModePureState(sp, v);
}

TwoModePureState random_pure(int cutoff, std::mt19937_64& rng) {
    FockSpace sp(cutoff);
    std::normal_distribution<double> g;
    Vector v(sp.dim());
    for (auto& x : v) x = cplx(g(rng), g(rng));
    v.normalize();
    return TwoModePureState(sp, v);
}

TwoModeDensityMatrix random_mixed(int cutoff, int rank, std::mt19937_64& rng) {
    FockSpace sp(cutoff);
    std::normal_distribution<double> g;
    Matrix a(sp.dim(), rank);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = cplx(g(rng), g(rng));
    Matrix m = a * a.adjoint();
    m /= m.trace().real();
    return TwoModeDensityMatrix(sp, m);
}

// E_N of a pure state from its Schmidt coefficients: log2 (sum_i s_i)^2.
double schmidt_log_negativity(const TwoModePureState& psi) {
    Eigen::JacobiSVD<Matrix> svd(psi.amplitude_matrix());
    const double s = svd.singularValues().sum();
    return std::log2(s * s);
}

} // namespace

TEST_CASE("basis is lexicographic in (n_a, n_b) with n_a + n_b <= cutoff", "[fock]") {
    FockSpace sp(3);
    REQUIRE(sp.dim() == 10);
    REQUIRE(sp.index(0, 0) == 0);
    REQUIRE(sp.index(0, 3) == 3);
    REQUIRE(sp.index(1, 0) == 4);
    REQUIRE(sp.index(3, 0) == 9);
    for (Eigen::Index i = 0; i < sp.dim(); ++i) {
        const auto s = sp.state(i);
        REQUIRE(sp.index(s.n_a, s.n_b) == i);
    }
    REQUIRE_THROWS_AS(sp.index(2, 2), CapacityError);
}

TEST_CASE("annihilation operators", "[fock]") {
    FockSpace sp(4);
    const Matrix a = sp.annihilation(Mode::a);
    REQUIRE(std::abs(a(sp.index(1, 2), sp.index(2, 2)) - std::sqrt(2.0)) < 1e-15);
    const Matrix b = sp.annihilation(Mode::b);
    // [a, b] = 0 on the truncated space
    REQUIRE((a * b - b * a).norm() < 1e-14);
}

TEST_CASE("state construction from descriptors", "[fock]") {
    const auto f = make_pure_state(FockSpec{1, 1}, 4);
    REQUIRE(f.amplitude(1, 1) == cplx(1.0));
    REQUIRE(f.amplitudes().squaredNorm() == 1.0);

    const auto n2 = make_pure_state(NoonSpec{2}, 4);
    CHECK_THAT(n2.amplitude(2, 0).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(n2.amplitude(0, 2).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));

    REQUIRE_THROWS_AS(make_pure_state(NoonSpec{5}, 4), CapacityError);
    REQUIRE_THROWS_AS(make_pure_state(ThermalSpec{1, 1}, 4), UsageError);
}

TEST_CASE("state spec parser", "[fock][cli]") {
    REQUIRE(std::get<NoonSpec>(parse_state_spec("noon:4")).N == 4);
    const auto f = std::get<FockSpec>(parse_state_spec("fock:1,1"));
    REQUIRE((f.n_a == 1 && f.n_b == 1));
    REQUIRE(std::get<ThermalSpec>(parse_state_spec("thermal:0.5,2")).nbar_b == 2.0);
    REQUIRE(std::get<TmsvSpec>(parse_state_spec("tmsv:0.25")).r == 0.25);
    for (const char* bad : {"noon:-1", "noon:0", "fock:1", "fock:a,b", "tmsv:", "coherent:1", "", "noon:2x"}) {
        INFO(bad);
        REQUIRE_THROWS_AS(parse_state_spec(bad), UsageError);
    }
    try {
        parse_state_spec("noon:-1");
    } catch (const UsageError& e) {
        REQUIRE(std::string(e.what()).find(kStateGrammar) != std::string::npos);
    }
}

TEST_CASE("invalid density matrices are rejected", "[fock]") {
    FockSpace sp(1);
    Matrix m = Matrix::Identity(sp.dim(), sp.dim());
    REQUIRE_THROWS_AS(TwoModeDensityMatrix(sp, m), ValidityError); // trace 3
    m /= 3.0;
    m(0, 1) = cplx(0.0, 0.1);
    REQUIRE_THROWS_AS(TwoModeDensityMatrix(sp, m), ValidityError); // not Hermitian

    Matrix neg = Matrix::Zero(sp.dim(), sp.dim());
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    REQUIRE_THROWS_AS(TwoModeDensityMatrix(sp, neg).validate(), ValidityError);
}

TEST_CASE("partial transpose", "[fock][pt]") {
    SECTION("product state is unchanged") {
        const TwoModeDensityMatrix rho(make_pure_state(FockSpec{1, 0}, 2));
        REQUIRE((partial_transpose(rho) - embed_in_box(rho)).norm() == 0.0);
        REQUIRE(negativity(rho) == 0.0);
        REQUIRE(log_negativity(rho).value == 0.0);
    }
    SECTION("hand-computed 4x4 block of (|0,1> + |1,0>)/sqrt2") {
        // PT swaps |0,1><1,0| into |0,0><1,1|: block on (00, 11, 01, 10) is
        // [[0, 1/2, 0, 0], [1/2, 0, 0, 0], [0, 0, 1/2, 0], [0, 0, 0, 1/2]]
        const TwoModeDensityMatrix rho(bell01(1));
        const Matrix pt = partial_transpose(rho);
        FockSpace sp(1);
        const auto i00 = sp.box_index(0, 0), i11 = sp.box_index(1, 1);
        const auto i01 = sp.box_index(0, 1), i10 = sp.box_index(1, 0);
        CHECK(std::abs(pt(i00, i11) - 0.5) < 1e-15);
        CHECK(std::abs(pt(i01, i01) - 0.5) < 1e-15);
        CHECK(std::abs(pt(i10, i10) - 0.5) < 1e-15);
        CHECK(std::abs(pt(i01, i10)) < 1e-15);

        const auto ev = pt_eigenvalues(rho);
        REQUIRE(ev.size() == 4);
        CHECK_THAT(ev[0], WithinAbs(0.5, 1e-15));
        CHECK_THAT(ev[1], WithinAbs(0.5, 1e-15));
        CHECK_THAT(ev[2], WithinAbs(0.5, 1e-15));
        CHECK_THAT(ev[3], WithinAbs(-0.5, 1e-15));
        CHECK_THAT(negativity(rho), WithinAbs(0.5, 1e-15));
        CHECK_THAT(log_negativity(rho).value, WithinAbs(1.0, 1e-14));
    }
    SECTION("involution") {
        std::mt19937_64 rng(7);
        const auto rho = random_mixed(3, 4, rng);
        const Matrix twice = partial_transpose_box(partial_transpose(rho), 3);
        REQUIRE((twice - embed_in_box(rho)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("blockwise PT spectrum equals dense eigendecomposition", "[fock][pt]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = random_mixed(3, 2, rng);
        Eigen::SelfAdjointEigenSolver<Matrix> es(partial_transpose(rho), Eigen::EigenvaluesOnly);
        std::vector<double> dense(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        sort_descending(dense);
        const auto blocks = pt_eigenvalues(rho);
        REQUIRE(blocks.size() == dense.size());
        for (std::size_t i = 0; i < dense.size(); ++i) REQUIRE_THAT(blocks[i], WithinAbs(dense[i], 1e-12));
    }
}

TEST_CASE("log-negativity of pure states matches the Schmidt route", "[fock][pt][property]") {
    std::mt19937_64 rng(2024);
    for (int cutoff : {1, 2, 4, 6}) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto psi = random_pure(cutoff, rng);
            const double direct = log_negativity(TwoModeDensityMatrix(psi)).value;
            REQUIRE_THAT(direct, WithinAbs(schmidt_log_negativity(psi), 1e-9));
        }
    }
    // evolved |1,1> at Jt = pi/4 dips to exactly 1
    const auto hom = evolve_lossless(make_pure_state(FockSpec{1, 1}, 2), {0.0, 1.0}, std::numbers::pi / 4);
    REQUIRE_THAT(schmidt_log_negativity(hom), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(negativity(TwoModeDensityMatrix(hom)), WithinAbs(0.5, 1e-12));
}

TEST_CASE("reduced states and entropy", "[fock][entropy]") {
    const TwoModeDensityMatrix p10(make_pure_state(FockSpec{1, 0}, 2));
    const Matrix ra = reduced_state(p10, Mode::a);
    REQUIRE(ra.rows() == 3);
    REQUIRE(std::abs(ra(1, 1) - 1.0) < 1e-15);
    REQUIRE(von_neumann_entropy(ra).value == 0.0);

    const TwoModeDensityMatrix bell(bell01(1));
    const Matrix rb = reduced_state(bell, Mode::a);
    CHECK_THAT(rb(0, 0).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(rb(1, 1).real(), WithinAbs(0.5, 1e-15));
    CHECK(std::abs(rb(0, 1)) < 1e-15);
    CHECK_THAT(entanglement_entropy(bell).value, WithinAbs(1.0, 1e-14));

    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 0.25, 0.5, 0.25;
    REQUIRE_THAT(von_neumann_entropy(d).value, WithinAbs(1.5, 1e-14));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const TwoModeDensityMatrix rho(random_pure(4, rng));
        REQUIRE_THAT(entanglement_entropy(rho, Mode::a).value,
                     WithinAbs(entanglement_entropy(rho, Mode::b).value, 1e-10));
    }
}

TEST_CASE("purity", "[fock][purity]") {
    std::mt19937_64 rng(3);
    REQUIRE_THAT(purity(TwoModeDensityMatrix(random_pure(3, rng))).value, WithinAbs(1.0, 1e-12));

    FockSpace sp(1);
    Matrix m = Matrix::Zero(sp.dim(), sp.dim());
    m(sp.index(0, 0), sp.index(0, 0)) = m(sp.index(1, 0), sp.index(1, 0)) = 0.5;
    REQUIRE_THAT(purity(TwoModeDensityMatrix(sp, m)).value, WithinAbs(0.5, 1e-15));

    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = random_mixed(3, 3, rng);
        const double from_eigs = rho.eigenvalues().squaredNorm();
        REQUIRE_THAT(purity(rho).value, WithinAbs(from_eigs, 1e-10));
    }
}

TEST_CASE("entropy clamps tiny negative eigenvalues and rejects large ones", "[fock][entropy]") {
    std::vector<double> ok{0.5, 0.5, -5e-10};
    REQUIRE_THAT(shannon_bits(ok), WithinAbs(1.0, 1e-12));
    std::vector<double> bad{0.6, 0.6, -0.2};
    REQUIRE_THROWS_AS(shannon_bits(bad), ValidityError);
}

TEST_CASE("normalization of constructed states", "[fock][property]") {
    for (int N = 1; N <= 8; ++N) {
        REQUIRE_THAT(make_pure_state(NoonSpec{N}, 10).amplitudes().norm(), WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(make_pure_state(FockSpec{N, 8 - N}, 10).amplitudes().norm(), WithinAbs(1.0, 1e-12));
    }
    REQUIRE_THAT(make_pure_state(TmsvSpec{0.5}, 20).amplitudes().norm(), WithinAbs(1.0, 1e-12));
}
