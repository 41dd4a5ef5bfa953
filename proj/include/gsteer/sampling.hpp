#pragma once

#include <cstdint>

#include "gsteer/gaussian.hpp"

namespace gsteer {

/// Deterministic sampler configuration.  The same config always produces
/// the same object on a given build.
struct SamplerConfig {
    std::uint64_t seed = 0;
    int n_modes = 1;
    double squeeze_scale = 0.7; ///< half-width of the Hamiltonian entries
    int ancilla_modes = 0;      ///< purification modes traced out for mixed states
};

/// exp(Omega H) for a symmetric generator H; always symplectic, and the
/// result is checked against the symplectic residual tolerance.
Matrix symplectic_from_hamiltonian(const Matrix& h);

/// Random symplectic matrix on cfg.n_modes modes: exp(Omega H) with H
/// symmetric and entries uniform on [-squeeze_scale, squeeze_scale].
Matrix random_symplectic(const SamplerConfig& cfg);

/// Random pure-state covariance matrix S S^T (all symplectic eigenvalues 1).
CovarianceMatrix random_pure_cm(const SamplerConfig& cfg);

/// Random mixed state: a pure state on n_modes + ancilla_modes reduced to
/// its first n_modes.  ancilla_modes == 0 degenerates to random_pure_cm.
CovarianceMatrix random_mixed_cm(const SamplerConfig& cfg);

/// Random (2 m_modes + c_modes)-mode state exactly invariant under swapping
/// the first two m_modes-sized parties: the average of a random mixed state
/// with its swap image (physical as a mixture of physical states), lifted
/// by the smallest t * I restoring physicality in the degenerate numerical
/// corner where round-off pushes the average outside the physical cone.
CovarianceMatrix random_symmetric_tripartite(const SamplerConfig& cfg, int m_modes,
                                             int c_modes);

/// Random two-mode standard form: a random two-mode mixed state (using
/// cfg.seed, squeeze_scale and ancilla_modes; cfg.n_modes is ignored)
/// reduced to standard form.
StandardForm2 random_standard_form(const SamplerConfig& cfg);

} // namespace gsteer
