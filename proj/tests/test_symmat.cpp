#include <doctest.h>

#include <cmath>
#include <random>

#include "gsteer/symmat.hpp"

using namespace gsteer;

namespace {

Matrix omega2() {
    Matrix w(2, 2);
    w << 0, 1, -1, 0;
    return w;
}

// Independent eigenvalue oracle: characteristic polynomial coefficients via
// Faddeev-LeVerrier, then roots as eigenvalues of the companion matrix
// through the *general* (non-symmetric) eigensolver.  Shares no code path
// with sym_eigenvalues.
Vector charpoly_eigenvalues(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    Matrix m = Matrix::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        m = a * (m + c[k - 1] * Matrix::Identity(n, n));
        c[k] = -m.trace() / k;
    }
    Matrix companion = Matrix::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[n - i];
    Eigen::EigenSolver<Matrix> es(companion);
    REQUIRE(es.info() == Eigen::Success);
    Vector roots = es.eigenvalues().real();
    double imag_max = es.eigenvalues().imag().cwiseAbs().maxCoeff();
    REQUIRE(imag_max < 1e-6);
    std::sort(roots.data(), roots.data() + n);
    return roots;
}

Matrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("SymMatrix construction and validation") {
    Matrix ok(2, 2);
    ok << 1, 2, 2, 3;
    CHECK(SymMatrix(ok).dim() == 2);

    Matrix skew(2, 2);
    skew << 1, 2, -2, 1;
    CHECK_THROWS_AS(SymMatrix{skew}, InvalidState);

    CHECK_THROWS_AS(SymMatrix(Matrix::Zero(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(SymMatrix(Matrix::Zero(2, 3)), std::invalid_argument);

    // Round-off asymmetry below tolerance is accepted and symmetrized away.
    Matrix nearly(2, 2);
    nearly << 1, 2, 2 + 1e-13, 3;
    SymMatrix s(nearly);
    CHECK(s(0, 1) == s(1, 0));
}

TEST_CASE("sym_eigenvalues on fixed matrices") {
    Vector ev = sym_eigenvalues(SymMatrix(Matrix::Identity(4, 4)));
    for (int i = 0; i < 4; ++i) CHECK(ev(i) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix d(2, 2);
    d << 3, 0, 0, -1;
    Vector ev2 = sym_eigenvalues(SymMatrix(d));
    CHECK(ev2(0) == doctest::Approx(-1.0));
    CHECK(ev2(1) == doctest::Approx(3.0));
}

TEST_CASE("sym_eigenvalues agrees with the characteristic-polynomial oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + trial % 5;
        Matrix raw = random_matrix(rng, n);
        SymMatrix m(raw + raw.transpose());
        Vector ours = sym_eigenvalues(m);
        Vector oracle = charpoly_eigenvalues(m.mat());
        double scale = std::max(1.0, ours.cwiseAbs().maxCoeff());
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(ours(i) - oracle(i)) <= 1e-8 * scale);
    }
}

TEST_CASE("sym_eigensystem reconstructs the matrix") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 6;
        Matrix raw = random_matrix(rng, n);
        SymMatrix m(raw + raw.transpose());
        EigenSystem es = sym_eigensystem(m);
        Matrix rebuilt = es.vectors * es.values.asDiagonal() * es.vectors.transpose();
        CHECK((rebuilt - m.mat()).norm() <= 1e-9 * std::max(1.0, m.mat().norm()));
    }
}

TEST_CASE("psd_check on Hermitian pairs: fixed examples") {
    // I + i Omega: eigenvalues {0, 2} -> PSD with zero margin.
    PsdVerdict v1 = psd_check(HermPair(SymMatrix(Matrix::Identity(2, 2)), omega2()));
    CHECK(v1.is_psd);
    CHECK(std::abs(v1.margin) <= 1e-12);

    // 2I + i Omega: eigenvalues {1, 3}.
    PsdVerdict v2 = psd_check(HermPair(SymMatrix(2 * Matrix::Identity(2, 2)), omega2()));
    CHECK(v2.is_psd);
    CHECK(v2.margin == doctest::Approx(1.0).epsilon(1e-12));

    // I + 2i Omega: eigenvalues {-1, 3} -> not PSD, margin -1.
    PsdVerdict v3 = psd_check(HermPair(SymMatrix(Matrix::Identity(2, 2)), 2 * omega2()));
    CHECK(!v3.is_psd);
    CHECK(v3.margin == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("embedding spectrum has even multiplicities") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 5;
        Matrix a = random_matrix(rng, n);
        Matrix b = random_matrix(rng, n);
        HermPair p(SymMatrix(a + a.transpose()), b - b.transpose());
        Vector ev = sym_eigenvalues(SymMatrix(hermitian_embedding(p)));
        double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
        for (int i = 0; i + 1 < ev.size(); i += 2)
            CHECK(std::abs(ev(i) - ev(i + 1)) <= 1e-9 * scale);
    }
}

TEST_CASE("herm_pair_det fixed values") {
    CHECK(std::abs(herm_pair_det(HermPair(SymMatrix(Matrix::Identity(2, 2)), omega2()))) <=
          1e-12);
    CHECK(herm_pair_det(HermPair(SymMatrix(2 * Matrix::Identity(2, 2)), omega2())) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(herm_pair_det(HermPair(SymMatrix(Matrix::Identity(2, 2)), 2 * omega2())) ==
          doctest::Approx(-3.0).epsilon(1e-12));

    bool singular = false;
    herm_pair_det(HermPair(SymMatrix(Matrix::Identity(2, 2)), omega2()), &singular);
    CHECK(singular);
    herm_pair_det(HermPair(SymMatrix(2 * Matrix::Identity(2, 2)), omega2()), &singular);
    CHECK(!singular);
}

TEST_CASE("herm_pair_det squares to the embedding determinant") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 4;
        Matrix a = random_matrix(rng, n);
        Matrix b = random_matrix(rng, n);
        HermPair p(SymMatrix(a + a.transpose()), b - b.transpose());
        double det = herm_pair_det(p);
        double edet = sym_det(SymMatrix(hermitian_embedding(p)));
        CHECK(std::abs(det * det - edet) <= 1e-8 * std::max(1.0, std::abs(edet)));
    }
}

TEST_CASE("sqrt_spd") {
    Matrix d(2, 2);
    d << 4, 0, 0, 9;
    SymMatrix r = sqrt_spd(SymMatrix(d));
    CHECK(r(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(r(0, 1)) <= 1e-12);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 6;
        Matrix raw = random_matrix(rng, n);
        SymMatrix spd(raw * raw.transpose() + 0.3 * Matrix::Identity(n, n));
        SymMatrix root = sqrt_spd(spd);
        CHECK((root.mat() * root.mat() - spd.mat()).norm() <=
              1e-9 * std::max(1.0, spd.mat().norm()));
    }

    Matrix npd(2, 2);
    npd << 1, 0, 0, -1;
    CHECK_THROWS_AS(sqrt_spd(SymMatrix(npd)), InvalidState);
    CHECK_THROWS_AS(sqrt_spd(SymMatrix(Matrix::Zero(2, 2))), InvalidState);
}

TEST_CASE("schur_complement of a symmetric matrix") {
    Matrix m(2, 2);
    m << 2, 1, 1, 2;
    SymMatrix s = schur_complement(SymMatrix(m), {0});
    CHECK(s.dim() == 1);
    CHECK(s(0, 0) == doctest::Approx(1.5).epsilon(1e-12));

    // Block-diagonal input: eliminating one block leaves the other intact.
    Matrix bd = Matrix::Zero(4, 4);
    bd.topLeftCorner(2, 2) << 2, 1, 1, 2;
    bd.bottomRightCorner(2, 2) << 5, -1, -1, 4;
    SymMatrix rest = schur_complement(SymMatrix(bd), {0, 1});
    CHECK((rest.mat() - bd.bottomRightCorner(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(schur_complement(SymMatrix(m), {}), std::invalid_argument);
    CHECK_THROWS_AS(schur_complement(SymMatrix(m), {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(schur_complement(SymMatrix(m), {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(schur_complement(SymMatrix(m), {2}), std::invalid_argument);

    Matrix sing = Matrix::Zero(2, 2);
    sing(1, 1) = 1.0;
    CHECK_THROWS_AS(schur_complement(SymMatrix(sing), {0}), InvalidState);
}

TEST_CASE("determinant factorizes through the Schur complement") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + trial % 10;
        Matrix raw = random_matrix(rng, n);
        SymMatrix spd(raw * raw.transpose() + 0.5 * Matrix::Identity(n, n));
        int k = 1 + trial % (n - 1);
        std::vector<int> pivot(k);
        for (int i = 0; i < k; ++i) pivot[i] = i;
        double dm = sym_det(spd);
        double dp = sym_det(SymMatrix(spd.mat()(pivot, pivot)));
        double ds = sym_det(schur_complement(spd, pivot));
        CHECK(std::abs(dm - dp * ds) <= 1e-8 * std::max(1.0, std::abs(dm)));
    }
}

TEST_CASE("schur_complement of a Hermitian pair stays an embedding") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + trial % 3;
        Matrix raw = random_matrix(rng, n);
        Matrix b = random_matrix(rng, n);
        // Hermitian positive definite so every pivot block is invertible.
        SymMatrix a(raw * raw.transpose() + (1.0 + n) * Matrix::Identity(n, n));
        HermPair p(a, 0.5 * (b - b.transpose()));
        HermPair s = schur_complement(p, {0});
        CHECK(s.dim() == n - 1);

        // det(M) = det(P) det(M / P) transfers to the pair determinant.
        double det_m = herm_pair_det(p);
        std::vector<int> pidx{0};
        HermPair pivot_pair(SymMatrix(a.mat()(pidx, pidx)), p.antisym(pidx, pidx));
        double det_p = herm_pair_det(pivot_pair);
        double det_s = herm_pair_det(s);
        CHECK(std::abs(det_m - det_p * det_s) <= 1e-8 * std::max(1.0, std::abs(det_m)));
    }
}

TEST_CASE("psd_check honours explicit tolerance") {
    Matrix slightly(2, 2);
    slightly << 1, 0, 0, -1e-6;
    PsdVerdict strict = psd_check(SymMatrix(slightly));
    CHECK(!strict.is_psd);
    PsdVerdict loose = psd_check(SymMatrix(slightly), 1e-3);
    CHECK(loose.is_psd);
    CHECK(loose.tolerance == doctest::Approx(1e-3));
}
