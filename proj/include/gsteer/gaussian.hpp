#pragma once

#include <utility>
#include <vector>

#include "gsteer/symmat.hpp"

namespace gsteer {

/// A set of mode indices (0-based) selecting a party or subsystem.
using ModeSet = std::vector<int>;

/// Covariance matrix of an n-mode Gaussian state.  Quadratures are ordered
/// x1, p1, x2, p2, ..., and the vacuum has unit variance per quadrature
/// (gamma_vac = I).  Construction checks shape and symmetry only;
/// physicality is a separate, explicit test (validate_cm).
class CovarianceMatrix {
public:
    CovarianceMatrix(int n_modes, Matrix m);
    explicit CovarianceMatrix(SymMatrix m);

    int n_modes() const { return n_; }
    int dim() const { return 2 * n_; }
    const Matrix& mat() const { return m_.mat(); }
    const SymMatrix& sym() const { return m_; }

private:
    int n_;
    SymMatrix m_;
};

/// Symplectic form Omega = direct sum of n copies of [[0, 1], [-1, 0]],
/// matching the interleaved quadrature ordering.
Matrix symplectic_form(int n_modes);

/// Physicality test: gamma + i Omega >= 0 (which also forces gamma > 0).
/// The reported margin is min(smallest embedding eigenvalue of
/// gamma + i Omega, smallest eigenvalue of gamma).
PsdVerdict validate_cm(const CovarianceMatrix& g, double tol = -1.0);

/// Convenience wrapper: validate_cm(...).is_psd.
bool is_physical(const CovarianceMatrix& g, double tol = -1.0);

/// Symplectic (Williamson) eigenvalues, ascending.  Computed as the
/// singular values of K = gamma^{1/2} Omega gamma^{1/2}, obtained from the
/// symmetric matrix -K^2 so that only symmetric eigensolves are used.
/// Physical states have all values >= 1; pure states have all values = 1.
Vector symplectic_eigenvalues(const CovarianceMatrix& g);

/// Reduced state on the modes listed in `keep` (ascending order of the
/// given indices; duplicates rejected).
CovarianceMatrix partial_trace(const CovarianceMatrix& g, const ModeSet& keep);

/// Determinant of the covariance matrix.
double cm_det(const CovarianceMatrix& g);

/// Two-mode squeezed vacuum with squeezing parameter r >= 0:
/// local blocks cosh(2r) I2, cross blocks sinh(2r) diag(1, -1).
CovarianceMatrix tmsv(double r);

/// n-mode vacuum (identity covariance).
CovarianceMatrix vacuum_cm(int n_modes);

/// Symplectic phase rotation by theta on one mode of an n-mode register:
/// the selected 2x2 block is [[cos t, sin t], [-sin t, cos t]], identity
/// elsewhere.  theta = pi/2 maps the block to [[0, 1], [-1, 0]].
Matrix phase_shift_symplectic(double theta, int mode, int n_modes);

/// gamma -> S gamma S^T after checking that S is symplectic
/// (||S Omega S^T - Omega||_F <= 1e-9 * max(1, ||S||_F^2)).
CovarianceMatrix apply_symplectic(const CovarianceMatrix& g, const Matrix& s);

/// Covariance of a statistical mixture of zero-mean Gaussian states:
/// sum of w_i gamma_i with positive weights summing to 1 (within 1e-12).
/// The result is checked for physicality.
CovarianceMatrix mix_cms(const std::vector<std::pair<double, CovarianceMatrix>>& parts);

/// Direct sum (tensor product of states): block-diagonal covariance.
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// Three-mode mixture built from two two-mode squeezed branches:
///   1/2 (pair_AB + vacuum_C) + 1/2 (vacuum_A + pair_BC)
/// where each pair has covariance entries (cosh_r, sinh_r) and the BC
/// branch is phase-rotated by pi/4 on both of its modes.  Both adjacent
/// pairs are entangled iff 1 < cosh_r < 3, yet no bipartition is steerable
/// for any cosh_r, making this the canonical steering-free entangled
/// family.  Requires cosh_r >= 1.
CovarianceMatrix pair_mixture_cm(double cosh_r);

/// Fixed three-mode state (A = mode 0, B = modes 1, 2) that satisfies the
/// determinant condition det gamma >= det gamma_A while the steering test
/// A -> B fails: a witness that the determinant condition stops being
/// sufficient once the steered party has more than one mode.
CovarianceMatrix counterexample_cm();

/// Two-mode standard form: local blocks diag(a, a) and diag(b, b), cross
/// block diag(c1, c2) with c1 >= |c2|.
struct StandardForm2 {
    double a;
    double b;
    double c1;
    double c2;

    /// The 4x4 covariance matrix with this standard form.
    CovarianceMatrix to_cm() const;
};

/// Checks a >= 1, b >= 1, c1 >= |c2| >= 0 (up to the default tolerance)
/// and physicality of the reconstructed matrix.  Throws InvalidState on
/// violation.
void validate_standard_form(const StandardForm2& sf);

/// Reduce an arbitrary physical two-mode state to its standard form by
/// local symplectic transformations (local Williamson reduction followed
/// by local rotations diagonalizing the cross block).  The four invariants
/// det A, det B, det C, det gamma are preserved.
StandardForm2 standardize_two_mode(const CovarianceMatrix& g);

} // namespace gsteer
