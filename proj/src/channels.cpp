#include "gsteer/channels.hpp"

#include <algorithm>
#include <cmath>

#include "gsteer/steering.hpp"

namespace gsteer {

GaussianChannel::GaussianChannel(Matrix x, Matrix y) : x_mat(std::move(x)), y_mat(std::move(y)) {
    if (x_mat.rows() != x_mat.cols() || y_mat.rows() != y_mat.cols())
        throw std::invalid_argument("GaussianChannel: X and Y must be square");
    if (x_mat.rows() != y_mat.rows())
        throw std::invalid_argument("GaussianChannel: X and Y differ in shape");
    if (x_mat.rows() == 0 || x_mat.rows() % 2 != 0)
        throw std::invalid_argument("GaussianChannel: dimension must be a positive even number");
    double skew = (y_mat - y_mat.transpose()).cwiseAbs().maxCoeff();
    if (skew > symmetry_tolerance(y_mat))
        throw InvalidState("GaussianChannel: Y must be symmetric");
    y_mat = 0.5 * (y_mat + y_mat.transpose());
}

PsdVerdict GaussianChannel::cp_check(double tol) const {
    Matrix omega = symplectic_form(n_modes());
    Matrix anti = omega - x_mat * omega * x_mat.transpose();
    return psd_check(HermPair(SymMatrix(y_mat), 0.5 * (anti - anti.transpose())), tol);
}

GaussianChannel loss_channel(double eta) {
    if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("loss_channel: transmittance must lie in [0, 1]");
    return GaussianChannel(std::sqrt(eta) * Matrix::Identity(2, 2),
                           (1.0 - eta) * Matrix::Identity(2, 2));
}

GaussianChannel amp_channel(double gain) {
    if (!std::isfinite(gain) || gain < 1.0)
        throw std::invalid_argument("amp_channel: gain must be >= 1");
    return GaussianChannel(std::sqrt(gain) * Matrix::Identity(2, 2),
                           (gain - 1.0) * Matrix::Identity(2, 2));
}

GaussianChannel identity_channel(int k) {
    if (k <= 0)
        throw std::invalid_argument("identity_channel: mode count must be positive");
    return GaussianChannel(Matrix::Identity(2 * k, 2 * k), Matrix::Zero(2 * k, 2 * k));
}

GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first) {
    if (second.n_modes() != first.n_modes())
        throw std::invalid_argument("compose: channels differ in mode count");
    return GaussianChannel(second.x_mat * first.x_mat,
                           second.x_mat * first.y_mat * second.x_mat.transpose() + second.y_mat);
}

CovarianceMatrix apply_channel(const CovarianceMatrix& g, const GaussianChannel& ch,
                               const ModeSet& modes) {
    std::vector<int> sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("apply_channel: mode indices repeat");
    if (static_cast<int>(modes.size()) != ch.n_modes())
        throw std::invalid_argument("apply_channel: channel acts on " +
                                    std::to_string(ch.n_modes()) + " modes, got " +
                                    std::to_string(modes.size()));
    if (modes.empty() || sorted.front() < 0 || sorted.back() >= g.n_modes())
        throw std::invalid_argument("apply_channel: mode index out of range");
    if (!ch.cp_check().is_psd)
        throw InvalidState("apply_channel: channel is not completely positive");

    // Embed X and Y into the full register: identity / zero on untouched
    // modes, channel blocks (including cross-mode blocks) on the targets.
    // `modes` gives the register position of each channel-local mode.
    const int dim = g.dim();
    Matrix xf = Matrix::Identity(dim, dim);
    Matrix yf = Matrix::Zero(dim, dim);
    for (int m : modes) xf.block<2, 2>(2 * m, 2 * m).setZero();
    const int k = ch.n_modes();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            xf.block<2, 2>(2 * modes[a], 2 * modes[b]) = ch.x_mat.block<2, 2>(2 * a, 2 * b);
            yf.block<2, 2>(2 * modes[a], 2 * modes[b]) = ch.y_mat.block<2, 2>(2 * a, 2 * b);
        }
    Matrix out = xf * g.mat() * xf.transpose() + yf;
    return CovarianceMatrix(g.n_modes(), 0.5 * (out + out.transpose()));
}

double amp_threshold(double r) {
    if (!std::isfinite(r) || r <= 0.0)
        throw std::invalid_argument("amp_threshold: squeezing parameter must be > 0");
    double c = std::cosh(2.0 * r);
    return 2.0 * c / (c + 1.0);
}

double bisect_flip(const std::function<bool(double)>& steerable_at, double lo,
                   double hi, double xtol) {
    if (!(lo < hi) || !(xtol > 0.0))
        throw std::invalid_argument("bisect_flip: need lo < hi and xtol > 0");
    bool at_lo = steerable_at(lo);
    if (steerable_at(hi) == at_lo)
        throw std::invalid_argument("bisect_flip: no transition inside the bracket");
    while (hi - lo > xtol) {
        double mid = 0.5 * (lo + hi);
        if (steerable_at(mid) == at_lo) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

bool noisy_tmsv_steerable(double r, SteerDirection dir, const GaussianChannel& ch) {
    CovarianceMatrix noisy = apply_channel(tmsv(r), ch, {1});
    ModeSet from = dir == SteerDirection::AtoB ? ModeSet{0} : ModeSet{1};
    ModeSet to = dir == SteerDirection::AtoB ? ModeSet{1} : ModeSet{0};
    return steerable_gaussian(noisy, from, to).steerable;
}

} // namespace

double loss_threshold_bisect(double r, SteerDirection dir, double xtol) {
    return bisect_flip(
        [&](double eta) { return noisy_tmsv_steerable(r, dir, loss_channel(eta)); }, 0.0,
        1.0, xtol);
}

double amp_threshold_bisect(double r, SteerDirection dir, double xtol, double g_max) {
    return bisect_flip(
        [&](double gain) { return noisy_tmsv_steerable(r, dir, amp_channel(gain)); }, 1.0,
        g_max, xtol);
}

} // namespace gsteer
