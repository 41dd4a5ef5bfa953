#include "gsteer/symmat.hpp"

#include <algorithm>
#include <cmath>

namespace gsteer {

double symmetry_tolerance(const Matrix& m) {
    double scale = m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
    return 1e-10 * std::max(1.0, scale);
}

SymMatrix::SymMatrix(Matrix m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw std::invalid_argument("SymMatrix: dimension must be positive");
    if (m.rows() != m.cols())
        throw std::invalid_argument("SymMatrix: matrix must be square");
    double skew = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (skew > symmetry_tolerance(m))
        throw InvalidState("SymMatrix: input is not symmetric (max |M - M^T| = " +
                           std::to_string(skew) + ")");
    m_ = 0.5 * (m + m.transpose());
}

HermPair::HermPair(SymMatrix sym_part, Matrix antisym_part)
    : sym(std::move(sym_part)), antisym(std::move(antisym_part)) {
    if (antisym.rows() != sym.dim() || antisym.cols() != sym.dim())
        throw std::invalid_argument("HermPair: real and imaginary parts differ in shape");
    double skew = (antisym + antisym.transpose()).cwiseAbs().maxCoeff();
    if (skew > symmetry_tolerance(antisym))
        throw InvalidState("HermPair: imaginary part is not antisymmetric");
    antisym = 0.5 * (antisym - antisym.transpose());
}

Matrix hermitian_embedding(const HermPair& p) {
    int d = p.dim();
    Matrix e(2 * d, 2 * d);
    e.topLeftCorner(d, d) = p.sym.mat();
    e.topRightCorner(d, d) = -p.antisym;
    e.bottomLeftCorner(d, d) = p.antisym;
    e.bottomRightCorner(d, d) = p.sym.mat();
    return e;
}

namespace {

EigenSystem solve_sym(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success)
        throw InternalError("symmetric eigensolver failed to converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

double spectral_scale(const Vector& ev) {
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

PsdVerdict verdict_from(const Vector& ev, double tol) {
    double used = tol >= 0.0 ? tol : default_psd_tol(spectral_scale(ev));
    return {ev(0) >= -used, ev(0), used};
}

} // namespace

Vector sym_eigenvalues(const SymMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw InternalError("symmetric eigensolver failed to converge");
    return es.eigenvalues();
}

EigenSystem sym_eigensystem(const SymMatrix& m) { return solve_sym(m.mat()); }

double default_psd_tol(double spectral_scale) {
    return 1e-9 * std::max(1.0, spectral_scale);
}

PsdVerdict psd_check(const SymMatrix& m, double tol) {
    return verdict_from(sym_eigenvalues(m), tol);
}

PsdVerdict psd_check(const HermPair& p, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_embedding(p), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw InternalError("symmetric eigensolver failed to converge");
    return verdict_from(es.eigenvalues(), tol);
}

double sym_det(const SymMatrix& m) {
    Vector ev = sym_eigenvalues(m);
    double det = 1.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) det *= ev(i);
    return det;
}

double herm_pair_det(const HermPair& p, bool* singular) {
    // The embedding spectrum is that of A + iB with every eigenvalue
    // duplicated, so after an ascending sort values (0,1), (2,3), ... form
    // the pairs.  One factor per pair gives det(A + iB), which is real.
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_embedding(p), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw InternalError("symmetric eigensolver failed to converge");
    Vector ev = es.eigenvalues();
    double scale = std::max(1.0, spectral_scale(ev));
    double sing_tol = default_psd_tol(spectral_scale(ev));
    double det = 1.0;
    bool sing = false;
    for (Eigen::Index i = 0; i + 1 < ev.size(); i += 2) {
        if (std::abs(ev(i) - ev(i + 1)) > 1e-7 * scale)
            throw InternalError("herm_pair_det: embedding spectrum failed to pair");
        double lam = 0.5 * (ev(i) + ev(i + 1));
        if (std::abs(lam) <= sing_tol) sing = true;
        det *= lam;
    }
    if (singular) *singular = sing;
    return det;
}

SymMatrix sqrt_spd(const SymMatrix& m) {
    EigenSystem es = sym_eigensystem(m);
    double tol = default_psd_tol(spectral_scale(es.values));
    if (es.values(0) <= tol)
        throw InvalidState("sqrt_spd: matrix is not safely positive definite "
                           "(min eigenvalue " + std::to_string(es.values(0)) + ")");
    Vector roots = es.values.cwiseSqrt();
    Matrix r = es.vectors * roots.asDiagonal() * es.vectors.transpose();
    return SymMatrix(0.5 * (r + r.transpose()));
}

namespace {

// Shared validation + elimination for both Schur complement overloads.
// Expects the pivot block of `m` to be symmetric, which holds for both
// callers (symmetric input, or the symmetric embedding of a Hermitian pair).
Matrix schur_core(const Matrix& m, const std::vector<int>& pivot) {
    const int d = static_cast<int>(m.rows());
    if (pivot.empty())
        throw std::invalid_argument("schur_complement: pivot set is empty");
    std::vector<int> piv = pivot;
    std::sort(piv.begin(), piv.end());
    if (std::adjacent_find(piv.begin(), piv.end()) != piv.end())
        throw std::invalid_argument("schur_complement: pivot indices repeat");
    if (piv.front() < 0 || piv.back() >= d)
        throw std::invalid_argument("schur_complement: pivot index out of range");
    if (static_cast<int>(piv.size()) == d)
        throw std::invalid_argument("schur_complement: pivot must be a strict subset");

    std::vector<int> rest;
    rest.reserve(d - piv.size());
    for (int i = 0, j = 0; i < d; ++i) {
        if (j < static_cast<int>(piv.size()) && piv[j] == i) { ++j; continue; }
        rest.push_back(i);
    }

    Matrix p = m(piv, piv);
    Matrix c = m(piv, rest);
    Matrix rr = m(rest, rest);

    Vector pev = sym_eigenvalues(SymMatrix(p));
    double inv_tol = 1e-12 * std::max(1.0, m.norm());
    if (pev.cwiseAbs().minCoeff() <= inv_tol)
        throw InvalidState("schur_complement: pivot block is singular to tolerance");

    return rr - c.transpose() * Eigen::FullPivLU<Matrix>(p).solve(c);
}

} // namespace

SymMatrix schur_complement(const SymMatrix& m, const std::vector<int>& pivot) {
    Matrix s = schur_core(m.mat(), pivot);
    return SymMatrix(0.5 * (s + s.transpose()));
}

HermPair schur_complement(const HermPair& p, const std::vector<int>& pivot) {
    const int d = p.dim();
    for (int idx : pivot)
        if (idx < 0 || idx >= d)
            throw std::invalid_argument("schur_complement: pivot index out of range");
    std::vector<int> embedded = pivot;
    embedded.reserve(2 * pivot.size());
    for (int idx : pivot) embedded.push_back(idx + d);

    Matrix s = schur_core(hermitian_embedding(p), embedded);
    const int j = static_cast<int>(s.rows()) / 2;

    // The complement of an embedding is again an embedding; recover the
    // real and imaginary parts and confirm the block structure survived.
    Matrix a = 0.5 * (s.topLeftCorner(j, j) + s.bottomRightCorner(j, j));
    Matrix b = 0.5 * (s.bottomLeftCorner(j, j) - s.topRightCorner(j, j));
    Matrix rebuilt(2 * j, 2 * j);
    rebuilt.topLeftCorner(j, j) = a;
    rebuilt.topRightCorner(j, j) = -b;
    rebuilt.bottomLeftCorner(j, j) = b;
    rebuilt.bottomRightCorner(j, j) = a;
    double drift = (s - rebuilt).cwiseAbs().maxCoeff();
    if (drift > 1e-8 * std::max(1.0, s.cwiseAbs().maxCoeff()))
        throw InternalError("schur_complement: embedding structure lost during elimination");

    return HermPair(SymMatrix(0.5 * (a + a.transpose())), 0.5 * (b - b.transpose()));
}

} // namespace gsteer
