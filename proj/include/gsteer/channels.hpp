#pragma once

#include <functional>

#include "gsteer/gaussian.hpp"

namespace gsteer {

/// Gaussian channel acting on k modes: gamma -> X gamma X^T + Y.
/// Complete positivity requires Y + i(Omega - X Omega X^T) >= 0.
struct GaussianChannel {
    GaussianChannel(Matrix x, Matrix y);

    int n_modes() const { return static_cast<int>(x_mat.rows()) / 2; }

    /// CP test: Y + i(Omega - X Omega X^T) >= 0 via the real embedding.
    PsdVerdict cp_check(double tol = -1.0) const;

    Matrix x_mat;
    Matrix y_mat;
};

/// Pure-loss (beam-splitter with vacuum) channel of transmittance eta in
/// [0, 1]: X = sqrt(eta) I2, Y = (1 - eta) I2.
GaussianChannel loss_channel(double eta);

/// Phase-insensitive amplifier of gain G >= 1: X = sqrt(G) I2,
/// Y = (G - 1) I2.
GaussianChannel amp_channel(double gain);

/// Identity channel on k modes.
GaussianChannel identity_channel(int k);

/// Channel composition: (second after first).
GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first);

/// Apply a k-mode channel to the listed modes of a larger state; all other
/// modes are untouched.  The channel must pass cp_check.
CovarianceMatrix apply_channel(const CovarianceMatrix& g, const GaussianChannel& ch,
                               const ModeSet& modes);

/// Closed-form gain threshold for steering a two-mode squeezed vacuum of
/// parameter r > 0 through an amplifier on the steered mode:
/// steering A -> B survives iff G < 2 cosh(2r) / (cosh(2r) + 1).
double amp_threshold(double r);

/// Direction of a steering test on a two-mode state (mode 0 = A, 1 = B).
enum class SteerDirection { AtoB, BtoA };

/// Bisect the steerable/non-steerable transition of `steerable_at` over
/// [lo, hi]; the endpoints must disagree.  Returns the flip point to within
/// `xtol`.
double bisect_flip(const std::function<bool(double)>& steerable_at, double lo,
                   double hi, double xtol);

/// Numerically locate the transmittance at which steering in the given
/// direction switches for tmsv(r) sent through a loss channel on mode B.
double loss_threshold_bisect(double r, SteerDirection dir, double xtol = 1e-7);

/// Numerically locate the gain at which steering switches for tmsv(r) sent
/// through an amplifier on mode B, searching [1, g_max].
double amp_threshold_bisect(double r, SteerDirection dir, double xtol = 1e-7,
                            double g_max = 5.0);

} // namespace gsteer
