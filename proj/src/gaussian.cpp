#include "gsteer/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsteer {

CovarianceMatrix::CovarianceMatrix(int n_modes, Matrix m) : n_(n_modes), m_(std::move(m)) {
    if (n_modes <= 0)
        throw std::invalid_argument("CovarianceMatrix: mode count must be positive");
    if (m_.dim() != 2 * n_modes)
        throw std::invalid_argument("CovarianceMatrix: matrix dimension must be 2 * n_modes");
}

CovarianceMatrix::CovarianceMatrix(SymMatrix m) : n_(m.dim() / 2), m_(std::move(m)) {
    if (m_.dim() % 2 != 0)
        throw std::invalid_argument("CovarianceMatrix: matrix dimension must be even");
}

Matrix symplectic_form(int n_modes) {
    if (n_modes <= 0)
        throw std::invalid_argument("symplectic_form: mode count must be positive");
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

PsdVerdict validate_cm(const CovarianceMatrix& g, double tol) {
    PsdVerdict unc = psd_check(HermPair(g.sym(), symplectic_form(g.n_modes())), tol);
    // gamma + i Omega >= 0 already implies gamma >= 0 (real test vectors
    // annihilate the Omega term), so this min() only guards round-off.
    double min_g = sym_eigenvalues(g.sym())(0);
    PsdVerdict v = unc;
    v.margin = std::min(unc.margin, min_g);
    v.is_psd = v.margin >= -v.tolerance;
    return v;
}

bool is_physical(const CovarianceMatrix& g, double tol) {
    return validate_cm(g, tol).is_psd;
}

Vector symplectic_eigenvalues(const CovarianceMatrix& g) {
    EigenSystem es = sym_eigensystem(g.sym());
    double scale = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
    if (es.values(0) <= 1e-12 * std::max(1.0, scale))
        throw InvalidState("symplectic_eigenvalues: covariance matrix is not positive definite");

    Matrix root = es.vectors * es.values.cwiseSqrt().asDiagonal() * es.vectors.transpose();
    Matrix k = root * symplectic_form(g.n_modes()) * root;
    // K is antisymmetric, so -K^2 = K^T K is symmetric PSD with the squared
    // singular values of K as doubled eigenvalues.
    Matrix w = k.transpose() * k;
    Vector sq = sym_eigenvalues(SymMatrix(0.5 * (w + w.transpose())));

    const int n = g.n_modes();
    Vector nus(n);
    for (int i = 0; i < n; ++i) {
        double lo = std::sqrt(std::max(0.0, sq(2 * i)));
        double hi = std::sqrt(std::max(0.0, sq(2 * i + 1)));
        if (std::abs(hi - lo) > 1e-6 * std::max(1.0, 0.5 * (hi + lo)))
            throw InternalError("symplectic_eigenvalues: singular values failed to pair "
                                "(gap " + std::to_string(hi - lo) + ")");
        nus(i) = 0.5 * (lo + hi);
    }
    return nus;
}

namespace {

// Validated, sorted copy of a mode set for an n-mode register.
std::vector<int> checked_modes(const ModeSet& modes, int n_modes, const char* who) {
    if (modes.empty())
        throw std::invalid_argument(std::string(who) + ": mode set is empty");
    std::vector<int> sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument(std::string(who) + ": mode indices repeat");
    if (sorted.front() < 0 || sorted.back() >= n_modes)
        throw std::invalid_argument(std::string(who) + ": mode index out of range");
    return sorted;
}

std::vector<int> quadrature_indices(const std::vector<int>& modes) {
    std::vector<int> idx;
    idx.reserve(2 * modes.size());
    for (int m : modes) {
        idx.push_back(2 * m);
        idx.push_back(2 * m + 1);
    }
    return idx;
}

} // namespace

CovarianceMatrix partial_trace(const CovarianceMatrix& g, const ModeSet& keep) {
    std::vector<int> modes = checked_modes(keep, g.n_modes(), "partial_trace");
    std::vector<int> idx = quadrature_indices(modes);
    Matrix sub = g.mat()(idx, idx);
    return CovarianceMatrix(static_cast<int>(modes.size()), std::move(sub));
}

double cm_det(const CovarianceMatrix& g) { return sym_det(g.sym()); }

CovarianceMatrix tmsv(double r) {
    if (!std::isfinite(r) || r < 0.0)
        throw std::invalid_argument("tmsv: squeezing parameter must be finite and >= 0");
    double c = std::cosh(2.0 * r);
    double s = std::sinh(2.0 * r);
    Matrix m(4, 4);
    m << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return CovarianceMatrix(2, std::move(m));
}

CovarianceMatrix vacuum_cm(int n_modes) {
    if (n_modes <= 0)
        throw std::invalid_argument("vacuum_cm: mode count must be positive");
    return CovarianceMatrix(n_modes, Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Matrix phase_shift_symplectic(double theta, int mode, int n_modes) {
    if (n_modes <= 0)
        throw std::invalid_argument("phase_shift_symplectic: mode count must be positive");
    if (mode < 0 || mode >= n_modes)
        throw std::invalid_argument("phase_shift_symplectic: mode index out of range");
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    double c = std::cos(theta);
    double sn = std::sin(theta);
    s(2 * mode, 2 * mode) = c;
    s(2 * mode, 2 * mode + 1) = sn;
    s(2 * mode + 1, 2 * mode) = -sn;
    s(2 * mode + 1, 2 * mode + 1) = c;
    return s;
}

CovarianceMatrix apply_symplectic(const CovarianceMatrix& g, const Matrix& s) {
    if (s.rows() != g.dim() || s.cols() != g.dim())
        throw std::invalid_argument("apply_symplectic: shape mismatch");
    Matrix omega = symplectic_form(g.n_modes());
    double resid = (s * omega * s.transpose() - omega).norm();
    double ss = s.norm();
    if (resid > 1e-9 * std::max(1.0, ss * ss))
        throw InvalidState("apply_symplectic: matrix is not symplectic (residual " +
                           std::to_string(resid) + ")");
    Matrix out = s * g.mat() * s.transpose();
    return CovarianceMatrix(g.n_modes(), 0.5 * (out + out.transpose()));
}

CovarianceMatrix mix_cms(const std::vector<std::pair<double, CovarianceMatrix>>& parts) {
    if (parts.empty())
        throw std::invalid_argument("mix_cms: no components");
    const int n = parts.front().second.n_modes();
    double total = 0.0;
    for (const auto& [w, cm] : parts) {
        if (!(w > 0.0))
            throw std::invalid_argument("mix_cms: weights must be positive");
        if (cm.n_modes() != n)
            throw std::invalid_argument("mix_cms: components differ in mode count");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("mix_cms: weights must sum to 1");

    // Mixing zero-mean Gaussians: second moments combine affinely.
    Matrix acc = Matrix::Zero(2 * n, 2 * n);
    for (const auto& [w, cm] : parts) acc += w * cm.mat();
    CovarianceMatrix out(n, std::move(acc));
    if (!is_physical(out))
        throw InvalidState("mix_cms: mixture is unphysical");
    return out;
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    Matrix m = Matrix::Zero(a.dim() + b.dim(), a.dim() + b.dim());
    m.topLeftCorner(a.dim(), a.dim()) = a.mat();
    m.bottomRightCorner(b.dim(), b.dim()) = b.mat();
    return CovarianceMatrix(a.n_modes() + b.n_modes(), std::move(m));
}

CovarianceMatrix pair_mixture_cm(double cosh_r) {
    if (!std::isfinite(cosh_r) || cosh_r < 1.0)
        throw std::invalid_argument("pair_mixture_cm: cosh_r must be finite and >= 1");
    // Each branch pair carries covariance entries (cosh_r, sinh_r); in the
    // tmsv(r') parametrization (entries cosh 2r') that is r' = acosh(cosh_r)/2.
    double r_branch = 0.5 * std::acosh(cosh_r);
    CovarianceMatrix ab = direct_sum(tmsv(r_branch), vacuum_cm(1));
    CovarianceMatrix bc = direct_sum(vacuum_cm(1), tmsv(r_branch));
    Matrix rot = phase_shift_symplectic(std::numbers::pi / 4.0, 1, 3) *
                 phase_shift_symplectic(std::numbers::pi / 4.0, 2, 3);
    bc = apply_symplectic(bc, rot);
    return mix_cms({{0.5, ab}, {0.5, bc}});
}

CovarianceMatrix counterexample_cm() {
    Matrix m(6, 6);
    m << 2.0,  0.0,  1.88,  0.0,   0.37,  0.0,
         0.0,  2.0,  0.0,  -0.39,  0.0,  -0.71,
         1.88, 0.0,  2.78,  0.0,   0.0,   0.0,
         0.0, -0.39, 0.0,   2.78,  0.0,   0.0,
         0.37, 0.0,  0.0,   0.0,   1.14,  0.0,
         0.0, -0.71, 0.0,   0.0,   0.0,   1.14;
    return CovarianceMatrix(3, std::move(m));
}

CovarianceMatrix StandardForm2::to_cm() const {
    Matrix m(4, 4);
    m << a,  0,  c1, 0,
         0,  a,  0,  c2,
         c1, 0,  b,  0,
         0,  c2, 0,  b;
    return CovarianceMatrix(2, std::move(m));
}

void validate_standard_form(const StandardForm2& sf) {
    double tol = 1e-9 * std::max({1.0, std::abs(sf.a), std::abs(sf.b), std::abs(sf.c1)});
    if (!(sf.a >= 1.0 - tol) || !(sf.b >= 1.0 - tol))
        throw InvalidState("standard form: local values must satisfy a, b >= 1");
    if (!(sf.c1 >= std::abs(sf.c2) - tol) || !(sf.c1 >= -tol))
        throw InvalidState("standard form: cross values must satisfy c1 >= |c2| >= 0");
    if (!is_physical(sf.to_cm()))
        throw InvalidState("standard form: reconstructed covariance matrix is unphysical");
}

namespace {

double det2(const Eigen::Ref<const Eigen::Matrix2d>& m) {
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

// Inverse square root of a 2x2 SPD block, scaled so that
// S block S^T = sqrt(det block) * I (single-mode Williamson reduction).
Eigen::Matrix2d local_williamson(const Eigen::Matrix2d& block, double nu) {
    EigenSystem es = sym_eigensystem(SymMatrix(block));
    double tol = default_psd_tol(std::abs(es.values(1)));
    if (es.values(0) <= tol)
        throw InvalidState("standardize_two_mode: degenerate local block");
    Eigen::Matrix2d inv_root = es.vectors * es.values.cwiseSqrt().cwiseInverse().asDiagonal() *
                               es.vectors.transpose();
    return std::sqrt(nu) * inv_root;
}

} // namespace

StandardForm2 standardize_two_mode(const CovarianceMatrix& g) {
    if (g.n_modes() != 2)
        throw std::invalid_argument("standardize_two_mode: state must have exactly 2 modes");
    if (!is_physical(g))
        throw InvalidState("standardize_two_mode: state is unphysical");

    Eigen::Matrix2d blk_a = g.mat().topLeftCorner(2, 2);
    Eigen::Matrix2d blk_b = g.mat().bottomRightCorner(2, 2);
    Eigen::Matrix2d cross = g.mat().topRightCorner(2, 2);

    double a = std::sqrt(det2(blk_a));
    double b = std::sqrt(det2(blk_b));

    Eigen::Matrix2d sa = local_williamson(blk_a, a);
    Eigen::Matrix2d sb = local_williamson(blk_b, b);
    Eigen::Matrix2d cp = sa * cross * sb.transpose();

    // Rotations (proper orthogonal, hence symplectic on a single mode)
    // diagonalizing the cross block: c1 gets the larger singular value and
    // c2 the sign of det(cross), which both rotations preserve.
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(cp);
    double sign = det2(cp) < 0.0 ? -1.0 : 1.0;
    double c1 = svd.singularValues()(0);
    double c2 = sign * svd.singularValues()(1);
    return {a, b, c1, c2};
}

} // namespace gsteer
