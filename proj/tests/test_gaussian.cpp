#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsteer/gaussian.hpp"
#include "gsteer/sampling.hpp"

using namespace gsteer;

namespace {

constexpr double kCosh2 = 3.7621956910836314; // cosh(2)
constexpr double kSinh2 = 3.6268604078470186; // sinh(2)

} // namespace

TEST_CASE("CovarianceMatrix shape checks") {
    CHECK_THROWS_AS(CovarianceMatrix(2, Matrix::Identity(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(CovarianceMatrix{SymMatrix(Matrix::Identity(3, 3))},
                    std::invalid_argument);
    CovarianceMatrix g(2, Matrix::Identity(4, 4));
    CHECK(g.n_modes() == 2);
    CHECK(g.dim() == 4);
}

TEST_CASE("symplectic_form structure") {
    Matrix w = symplectic_form(2);
    CHECK(w(0, 1) == 1.0);
    CHECK(w(1, 0) == -1.0);
    CHECK(w(2, 3) == 1.0);
    CHECK((w + w.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((w * w + Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("validate_cm: vacuum, thermal, and sub-vacuum states") {
    PsdVerdict vac = validate_cm(vacuum_cm(2));
    CHECK(vac.is_psd);
    CHECK(std::abs(vac.margin) <= 1e-12);

    PsdVerdict thermal = validate_cm(CovarianceMatrix(1, 3.0 * Matrix::Identity(2, 2)));
    CHECK(thermal.is_psd);
    CHECK(thermal.margin == doctest::Approx(2.0).epsilon(1e-12));

    // Half the vacuum variance violates the uncertainty relation.
    PsdVerdict bad = validate_cm(CovarianceMatrix(1, 0.5 * Matrix::Identity(2, 2)));
    CHECK(!bad.is_psd);
    CHECK(bad.margin == doctest::Approx(-0.5).epsilon(1e-12));

    CHECK(is_physical(counterexample_cm()));
}

TEST_CASE("tmsv entries, determinant, and physicality") {
    CovarianceMatrix r0 = tmsv(0.0);
    CHECK((r0.mat() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    CovarianceMatrix g = tmsv(1.0);
    CHECK(g.mat()(0, 0) == doctest::Approx(kCosh2).epsilon(1e-15));
    CHECK(g.mat()(0, 2) == doctest::Approx(kSinh2).epsilon(1e-15));
    CHECK(g.mat()(1, 3) == doctest::Approx(-kSinh2).epsilon(1e-15));

    for (double r : {0.2, 0.7, 1.3}) {
        CovarianceMatrix t = tmsv(r);
        CHECK(is_physical(t));
        CHECK(cm_det(t) == doctest::Approx(1.0).epsilon(1e-9));
        Vector nu = symplectic_eigenvalues(t);
        CHECK(nu(0) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(nu(1) == doctest::Approx(1.0).epsilon(1e-8));
    }

    CHECK_THROWS_AS(tmsv(-0.1), std::invalid_argument);
}

TEST_CASE("symplectic_eigenvalues on fixed states") {
    Vector ones = symplectic_eigenvalues(vacuum_cm(3));
    for (int i = 0; i < 3; ++i) CHECK(ones(i) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix d(4, 4);
    d.setZero();
    d.diagonal() << 2, 2, 3, 3;
    Vector nu = symplectic_eigenvalues(CovarianceMatrix(2, d));
    CHECK(nu(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(nu(1) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(symplectic_eigenvalues(CovarianceMatrix(1, Matrix::Zero(2, 2))),
                    InvalidState);
}

TEST_CASE("determinant equals the squared product of symplectic eigenvalues") {
    for (int i = 0; i < 20; ++i) {
        SamplerConfig cfg;
        cfg.seed = 100 + static_cast<std::uint64_t>(i);
        cfg.n_modes = 1 + i % 3;
        cfg.ancilla_modes = i % 2;
        CovarianceMatrix g = random_mixed_cm(cfg);
        Vector nu = symplectic_eigenvalues(g);
        double prod = 1.0;
        for (int k = 0; k < nu.size(); ++k) prod *= nu(k) * nu(k);
        CHECK(cm_det(g) == doctest::Approx(prod).epsilon(1e-8));
    }
}

TEST_CASE("physical states have symplectic spectrum >= 1") {
    for (int i = 0; i < 20; ++i) {
        SamplerConfig cfg;
        cfg.seed = 200 + static_cast<std::uint64_t>(i);
        cfg.n_modes = 2;
        cfg.ancilla_modes = 1 + i % 2;
        Vector nu = symplectic_eigenvalues(random_mixed_cm(cfg));
        CHECK(nu(0) >= 1.0 - 1e-9);
    }
}

TEST_CASE("partial_trace") {
    CovarianceMatrix g = tmsv(1.0);
    CovarianceMatrix a = partial_trace(g, {0});
    CHECK(a.n_modes() == 1);
    CHECK((a.mat() - kCosh2 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);

    CovarianceMatrix ce_a = partial_trace(counterexample_cm(), {0});
    CHECK((ce_a.mat() - 2.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    // Reduction of a product state is exactly its factor.
    CovarianceMatrix prod = direct_sum(tmsv(0.5), vacuum_cm(1));
    CovarianceMatrix back = partial_trace(prod, {0, 1});
    CHECK((back.mat() - tmsv(0.5).mat()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(partial_trace(g, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(g, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(g, {2}), std::invalid_argument);
}

TEST_CASE("phase_shift_symplectic") {
    Matrix id = phase_shift_symplectic(0.0, 0, 1);
    CHECK((id - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    Matrix quarter = phase_shift_symplectic(std::numbers::pi / 2.0, 0, 1);
    CHECK(quarter(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(quarter(0, 1) == doctest::Approx(1.0));
    CHECK(quarter(1, 0) == doctest::Approx(-1.0));

    // Group property: two eighth-turns make a quarter-turn.
    Matrix eighth = phase_shift_symplectic(std::numbers::pi / 4.0, 0, 1);
    CHECK((eighth * eighth - quarter).cwiseAbs().maxCoeff() <= 1e-15);

    // Rotations are symplectic.
    Matrix s = phase_shift_symplectic(0.3, 1, 3);
    Matrix w = symplectic_form(3);
    CHECK((s * w * s.transpose() - w).cwiseAbs().maxCoeff() <= 1e-15);

    CHECK_THROWS_AS(phase_shift_symplectic(0.1, 3, 3), std::invalid_argument);
}

TEST_CASE("apply_symplectic validates and preserves invariants") {
    CovarianceMatrix g = tmsv(1.0);
    CovarianceMatrix same = apply_symplectic(g, Matrix::Identity(4, 4));
    CHECK((same.mat() - g.mat()).cwiseAbs().maxCoeff() == 0.0);

    SamplerConfig cfg;
    cfg.seed = 42;
    cfg.n_modes = 2;
    Matrix s = random_symplectic(cfg);
    CovarianceMatrix moved = apply_symplectic(g, s);
    CHECK(cm_det(moved) == doctest::Approx(cm_det(g)).epsilon(1e-9));
    Vector nu0 = symplectic_eigenvalues(g);
    Vector nu1 = symplectic_eigenvalues(moved);
    CHECK((nu0 - nu1).cwiseAbs().maxCoeff() <= 1e-8);

    CHECK_THROWS_AS(apply_symplectic(g, 2.0 * Matrix::Identity(4, 4)), InvalidState);
    CHECK_THROWS_AS(apply_symplectic(g, Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("mix_cms") {
    CovarianceMatrix id = vacuum_cm(2);
    CovarianceMatrix same = mix_cms({{0.5, id}, {0.5, id}});
    CHECK((same.mat() - id.mat()).cwiseAbs().maxCoeff() == 0.0);

    CovarianceMatrix single = mix_cms({{1.0, tmsv(0.4)}});
    CHECK((single.mat() - tmsv(0.4).mat()).cwiseAbs().maxCoeff() == 0.0);

    // Mixing is affine on second moments.
    CovarianceMatrix t1 = tmsv(0.3);
    CovarianceMatrix t2 = tmsv(0.9);
    CovarianceMatrix mixed = mix_cms({{0.25, t1}, {0.75, t2}});
    CHECK((mixed.mat() - (0.25 * t1.mat() + 0.75 * t2.mat())).cwiseAbs().maxCoeff() <=
          1e-15);

    CHECK_THROWS_AS(mix_cms({}), std::invalid_argument);
    CHECK_THROWS_AS(mix_cms({{0.7, id}}), std::invalid_argument);
    CHECK_THROWS_AS(mix_cms({{0.5, id}, {0.5, vacuum_cm(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(mix_cms({{-0.5, id}, {1.5, id}}), std::invalid_argument);
}

TEST_CASE("pair_mixture_cm structure and physicality") {
    CHECK_THROWS_AS(pair_mixture_cm(0.5), std::invalid_argument);

    // cosh_r = 1 degenerates to the three-mode vacuum.
    CovarianceMatrix flat = pair_mixture_cm(1.0);
    CHECK((flat.mat() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-12);

    for (double c : {1.5, 2.0, 3.0, 6.0}) {
        CovarianceMatrix g = pair_mixture_cm(c);
        CHECK(g.n_modes() == 3);
        CHECK(is_physical(g));
        // Branch weights 1/2: block A is (cosh_r + 1)/2 on the diagonal.
        CHECK(g.mat()(0, 0) == doctest::Approx(0.5 * (c + 1.0)).epsilon(1e-12));
        CHECK(g.mat()(2, 2) == doctest::Approx(c).epsilon(1e-12));
    }
}

TEST_CASE("counterexample_cm fixed entries") {
    CovarianceMatrix g = counterexample_cm();
    CHECK(g.n_modes() == 3);
    CHECK(g.mat()(0, 2) == 1.88);
    CHECK(g.mat()(1, 5) == -0.71);
    CHECK(cm_det(g) == doctest::Approx(9.187103916015996).epsilon(1e-9));
}

TEST_CASE("standard form: fixed reductions") {
    StandardForm2 sf = standardize_two_mode(tmsv(0.8));
    CHECK(sf.a == doctest::Approx(std::cosh(1.6)).epsilon(1e-9));
    CHECK(sf.b == doctest::Approx(std::cosh(1.6)).epsilon(1e-9));
    CHECK(sf.c1 == doctest::Approx(std::sinh(1.6)).epsilon(1e-9));
    CHECK(sf.c2 == doctest::Approx(-std::sinh(1.6)).epsilon(1e-9));

    StandardForm2 vac = standardize_two_mode(vacuum_cm(2));
    CHECK(vac.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vac.b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(vac.c1) <= 1e-12);
    CHECK(std::abs(vac.c2) <= 1e-12);

    CHECK_THROWS_AS(standardize_two_mode(vacuum_cm(3)), std::invalid_argument);
    CHECK_THROWS_AS(standardize_two_mode(CovarianceMatrix(2, 0.1 * Matrix::Identity(4, 4))),
                    InvalidState);
}

TEST_CASE("standard form preserves the four local-symplectic invariants") {
    for (int i = 0; i < 40; ++i) {
        SamplerConfig cfg;
        cfg.seed = 300 + static_cast<std::uint64_t>(i);
        cfg.n_modes = 2;
        cfg.ancilla_modes = 1 + i % 2;
        CovarianceMatrix g = random_mixed_cm(cfg);
        StandardForm2 sf = standardize_two_mode(g);
        CHECK(sf.a >= 1.0 - 1e-9);
        CHECK(sf.b >= 1.0 - 1e-9);
        CHECK(sf.c1 >= std::abs(sf.c2) - 1e-12);

        Matrix blk_a = g.mat().topLeftCorner(2, 2);
        Matrix blk_b = g.mat().bottomRightCorner(2, 2);
        Matrix cross = g.mat().topRightCorner(2, 2);
        auto det2 = [](const Matrix& m) {
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        };
        double scale = std::max(1.0, std::abs(cm_det(g)));
        CHECK(std::abs(sf.a * sf.a - det2(blk_a)) <= 1e-8 * scale);
        CHECK(std::abs(sf.b * sf.b - det2(blk_b)) <= 1e-8 * scale);
        CHECK(std::abs(sf.c1 * sf.c2 - det2(cross)) <= 1e-8 * scale);
        CHECK(std::abs(cm_det(sf.to_cm()) - cm_det(g)) <= 1e-8 * scale);

        // The reconstructed standard form is itself physical.
        CHECK(is_physical(sf.to_cm()));
        validate_standard_form(sf);
    }
}

TEST_CASE("validate_standard_form rejects malformed quadruples") {
    CHECK_THROWS_AS(validate_standard_form({0.5, 1.0, 0.0, 0.0}), InvalidState);
    CHECK_THROWS_AS(validate_standard_form({1.0, 1.0, 0.2, 0.5}), InvalidState);
    // Physically impossible correlations for the given locals.
    CHECK_THROWS_AS(validate_standard_form({1.0, 1.0, 0.9, 0.0}), InvalidState);
}
