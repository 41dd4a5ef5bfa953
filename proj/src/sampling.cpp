#include "gsteer/sampling.hpp"

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace gsteer {

Matrix symplectic_from_hamiltonian(const Matrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0 || h.rows() % 2 != 0)
        throw std::invalid_argument("symplectic_from_hamiltonian: generator must be 2n x 2n");
    double skew = (h - h.transpose()).cwiseAbs().maxCoeff();
    if (skew > symmetry_tolerance(h))
        throw InvalidState("symplectic_from_hamiltonian: generator must be symmetric");
    int n = static_cast<int>(h.rows()) / 2;
    Matrix omega = symplectic_form(n);
    Matrix s = (omega * h).exp();
    double resid = (s * omega * s.transpose() - omega).norm();
    double ss = s.norm();
    if (resid > 1e-9 * std::max(1.0, ss * ss))
        throw InternalError("symplectic_from_hamiltonian: exponential lost symplecticity");
    return s;
}

Matrix random_symplectic(const SamplerConfig& cfg) {
    if (cfg.n_modes <= 0)
        throw std::invalid_argument("random_symplectic: mode count must be positive");
    if (!(cfg.squeeze_scale >= 0.0))
        throw std::invalid_argument("random_symplectic: squeeze_scale must be >= 0");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-cfg.squeeze_scale, cfg.squeeze_scale);
    const int d = 2 * cfg.n_modes;
    Matrix h(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            double v = dist(rng);
            h(i, j) = v;
            h(j, i) = v;
        }
    return symplectic_from_hamiltonian(h);
}

CovarianceMatrix random_pure_cm(const SamplerConfig& cfg) {
    Matrix s = random_symplectic(cfg);
    Matrix g = s * s.transpose();
    return CovarianceMatrix(cfg.n_modes, 0.5 * (g + g.transpose()));
}

CovarianceMatrix random_mixed_cm(const SamplerConfig& cfg) {
    if (cfg.ancilla_modes < 0)
        throw std::invalid_argument("random_mixed_cm: ancilla count must be >= 0");
    if (cfg.ancilla_modes == 0) return random_pure_cm(cfg);
    SamplerConfig wide = cfg;
    wide.n_modes = cfg.n_modes + cfg.ancilla_modes;
    ModeSet keep(cfg.n_modes);
    for (int i = 0; i < cfg.n_modes; ++i) keep[i] = i;
    return partial_trace(random_pure_cm(wide), keep);
}

CovarianceMatrix random_symmetric_tripartite(const SamplerConfig& cfg, int m_modes,
                                             int c_modes) {
    if (m_modes <= 0 || c_modes < 0)
        throw std::invalid_argument("random_symmetric_tripartite: bad party sizes");
    SamplerConfig base = cfg;
    base.n_modes = 2 * m_modes + c_modes;
    CovarianceMatrix g = random_mixed_cm(base);

    // Mode permutation swapping parties A and B; symplectic, involutive.
    const int d = g.dim();
    Matrix p = Matrix::Zero(d, d);
    for (int q = 0; q < 2 * m_modes; ++q) {
        p(q, 2 * m_modes + q) = 1.0;
        p(2 * m_modes + q, q) = 1.0;
    }
    for (int q = 4 * m_modes; q < d; ++q) p(q, q) = 1.0;

    Matrix avg = 0.5 * (g.mat() + p * g.mat() * p.transpose());
    CovarianceMatrix sym(base.n_modes, avg);
    PsdVerdict v = validate_cm(sym);
    if (v.is_psd) return sym;

    // Unreachable in exact arithmetic (mixtures of physical states are
    // physical); restore physicality with the smallest uniform noise lift.
    double lo = 0.0;
    double hi = 2.0 * std::abs(v.margin) + 1e-9;
    Matrix eye = Matrix::Identity(d, d);
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (is_physical(CovarianceMatrix(base.n_modes, avg + mid * eye))) hi = mid;
        else lo = mid;
    }
    return CovarianceMatrix(base.n_modes, avg + hi * eye);
}

StandardForm2 random_standard_form(const SamplerConfig& cfg) {
    SamplerConfig two = cfg;
    two.n_modes = 2;
    return standardize_two_mode(random_mixed_cm(two));
}

} // namespace gsteer
