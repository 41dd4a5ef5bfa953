#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gsteer/errors.hpp"

namespace gsteer {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Absolute tolerance below which |M - M^T| entries are accepted as
/// symmetric: 1e-10 scaled by max(1, max|entry|).
double symmetry_tolerance(const Matrix& m);

/// Dense real symmetric matrix.  Construction rejects non-square or
/// asymmetric input (beyond symmetry_tolerance) and stores the exactly
/// symmetrized matrix (M + M^T)/2, so downstream code never sees
/// asymmetric round-off.
class SymMatrix {
public:
    explicit SymMatrix(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Matrix m_;
};

/// Hermitian matrix A + iB represented by its real part A (symmetric) and
/// imaginary part B (antisymmetric).  All spectral questions about A + iB
/// are answered through the 2d x 2d real embedding
///     [[A, -B], [B, A]],
/// whose spectrum equals that of A + iB with every multiplicity doubled.
/// No complex arithmetic is used anywhere.
struct HermPair {
    HermPair(SymMatrix sym_part, Matrix antisym_part);

    int dim() const { return sym.dim(); }

    SymMatrix sym;
    Matrix antisym;
};

/// The real embedding [[A, -B], [B, A]] of A + iB.
Matrix hermitian_embedding(const HermPair& p);

/// Result of a positive-semidefiniteness test.
struct PsdVerdict {
    bool is_psd;      ///< margin >= -tolerance
    double margin;    ///< smallest eigenvalue found
    double tolerance; ///< tolerance actually used
};

/// Eigendecomposition M = V diag(values) V^T with orthonormal V.
struct EigenSystem {
    Vector values; ///< ascending
    Matrix vectors;
};

/// Eigenvalues of a symmetric matrix, ascending.
Vector sym_eigenvalues(const SymMatrix& m);

/// Full eigensystem of a symmetric matrix (values ascending).
EigenSystem sym_eigensystem(const SymMatrix& m);

/// Default PSD tolerance: 1e-9 scaled by max(1, spectral scale).
double default_psd_tol(double spectral_scale);

/// PSD test for a real symmetric matrix.  A negative `tol` requests the
/// default tolerance derived from the computed spectrum.
PsdVerdict psd_check(const SymMatrix& m, double tol = -1.0);

/// PSD test for a Hermitian pair A + iB via the real embedding.
PsdVerdict psd_check(const HermPair& p, double tol = -1.0);

/// Determinant of a symmetric matrix (eigenvalue product).
double sym_det(const SymMatrix& m);

/// Determinant of A + iB, which is real for Hermitian input.  Computed as
/// the product of one eigenvalue per duplicated pair of the embedding
/// spectrum.  If `singular` is non-null it is set when some eigenvalue pair
/// sits below the default tolerance in magnitude.
double herm_pair_det(const HermPair& p, bool* singular = nullptr);

/// Principal square root of a symmetric positive definite matrix.
/// Rejects matrices whose smallest eigenvalue is not safely positive.
SymMatrix sqrt_spd(const SymMatrix& m);

/// Schur complement M / M[pivot, pivot]:
///     D - C^T P^{-1} C
/// where P = M[pivot, pivot], C = M[pivot, rest], D = M[rest, rest].
/// `pivot` must be a strict, non-empty subset of {0, ..., dim-1} with the
/// pivot block invertible to tolerance 1e-12 * max(1, ||M||_F).
SymMatrix schur_complement(const SymMatrix& m, const std::vector<int>& pivot);

/// Schur complement of a Hermitian pair, computed entirely on the real
/// embedding: pivoting index set I of A + iB corresponds to I u (I + d) in
/// the embedding, and the complement there is again an embedding, from
/// which the result's real and imaginary parts are read back.
HermPair schur_complement(const HermPair& p, const std::vector<int>& pivot);

} // namespace gsteer
