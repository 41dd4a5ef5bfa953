#include "gsteer/reid.hpp"

#include <cmath>
#include <limits>

namespace gsteer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;

// Exact for every factorial representable below 2^53 (N <= 18), which is
// precisely the range where the direct evaluation path is used.
double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// value = sg * exp(lg), sg in {-1, 0, +1}.  lg is ignored when sg == 0.
struct SignedLog {
    double lg;
    int sg;
};

SignedLog slog_of(double v) {
    if (v > 0.0) return {std::log(v), 1};
    if (v < 0.0) return {std::log(-v), -1};
    return {-kInf, 0};
}

SignedLog slog_add(SignedLog a, SignedLog b) {
    if (a.sg == 0) return b;
    if (b.sg == 0) return a;
    if (a.sg == b.sg) {
        double hi = std::max(a.lg, b.lg);
        double lo = std::min(a.lg, b.lg);
        return {hi + std::log1p(std::exp(lo - hi)), a.sg};
    }
    if (a.lg == b.lg) return {-kInf, 0};
    const SignedLog& big = a.lg > b.lg ? a : b;
    const SignedLog& small = a.lg > b.lg ? b : a;
    return {big.lg + std::log1p(-std::exp(small.lg - big.lg)), big.sg};
}

double slog_value(SignedLog s) { return s.sg == 0 ? 0.0 : s.sg * std::exp(s.lg); }

// log(v^N) as a signed log for v possibly rounding slightly below zero,
// in which case it is treated as exactly zero.
SignedLog npow_log(double v, int n) {
    if (v <= 0.0) return {-kInf, 0};
    return {n * std::log(v), 1};
}

struct Brackets {
    double var_x, var_p, rhs; // reported values; may be +/-inf in log mode
    bool satisfied;
    bool finite;
};

Brackets direct_brackets(const MomentSet& m, int n) {
    double fact = factorial(n);
    double denom_a = std::pow(m.A, n) + std::pow(m.A + 1.0, n);
    double sum_b = std::pow(m.B, n) + std::pow(m.B + 1.0, n);
    double diff_b = std::pow(m.B + 1.0, n) - std::pow(m.B, n);
    // (-1)^N D^N = (-D)^N; for standard forms D <= 0 so -D = |D|.
    double gx = std::pow(m.C, n) + std::pow(-m.D, n);
    double gp = std::pow(m.C, n) - std::pow(-m.D, n);

    double bracket_x = sum_b - 4.0 * gx * gx / denom_a;
    double bracket_p = sum_b - 4.0 * gp * gp / denom_a;

    Brackets out;
    out.var_x = 0.5 * fact * bracket_x;
    out.var_p = 0.5 * fact * bracket_p;
    out.rhs = 0.25 * (fact * diff_b) * (fact * diff_b);
    out.finite = std::isfinite(out.var_x) && std::isfinite(out.var_p) &&
                 std::isfinite(out.rhs);
    double positivity_scale = kRelTol * std::max(1.0, 0.5 * fact * sum_b);
    double product_tol = kRelTol * std::max(1.0, out.rhs);
    out.satisfied = out.var_x >= -positivity_scale && out.var_p >= -positivity_scale &&
                    out.var_x * out.var_p >= out.rhs - product_tol;
    return out;
}

Brackets log_brackets(const MomentSet& m, int n) {
    double lfact = std::lgamma(static_cast<double>(n) + 1.0);
    const double log4 = std::log(4.0);

    SignedLog denom_a = slog_add(npow_log(m.A, n), npow_log(m.A + 1.0, n));
    SignedLog sum_b = slog_add(npow_log(m.B, n), npow_log(m.B + 1.0, n));
    SignedLog diff_b = slog_add(npow_log(m.B + 1.0, n),
                                {npow_log(m.B, n).lg, -npow_log(m.B, n).sg});
    SignedLog gx = slog_add(npow_log(m.C, n), npow_log(-m.D, n));
    SignedLog gp_raw = npow_log(-m.D, n);
    SignedLog gp = slog_add(npow_log(m.C, n), {gp_raw.lg, -gp_raw.sg});

    if (!std::isfinite(denom_a.lg) || denom_a.sg <= 0)
        throw std::overflow_error("reid_higher_order: log-scale evaluation overflowed");

    auto bracket = [&](SignedLog g) {
        // sum_b - 4 g^2 / denom_a, as a signed log
        SignedLog ratio{log4 + 2.0 * g.lg - denom_a.lg, g.sg == 0 ? 0 : -1};
        return slog_add(sum_b, ratio);
    };
    SignedLog bx = bracket(gx);
    SignedLog bp = bracket(gp);

    Brackets out;
    double lvar_scale = lfact - std::log(2.0);
    out.var_x = bx.sg == 0 ? 0.0 : bx.sg * std::exp(lvar_scale + bx.lg);
    out.var_p = bp.sg == 0 ? 0.0 : bp.sg * std::exp(lvar_scale + bp.lg);
    out.rhs = std::exp(2.0 * (lfact + diff_b.lg) - log4);
    out.finite = true; // decision made in log space regardless of exp overflow
    // (B+1)^N - B^N >= 1 for B >= 0, so rhs > 0 always: non-positive
    // brackets can never satisfy the product bound.
    out.satisfied = bx.sg > 0 && bp.sg > 0 &&
                    (bx.lg + bp.lg) - 2.0 * diff_b.lg >= -kRelTol;
    return out;
}

} // namespace

MomentSet moments_from_standard_form(const StandardForm2& sf) {
    validate_standard_form(sf);
    return {0.5 * (sf.a - 1.0), 0.5 * (sf.b - 1.0), 0.25 * (sf.c1 - sf.c2),
            -0.25 * (sf.c1 + sf.c2)};
}

OrderNReport reid_higher_order(const StandardForm2& sf, int N, bool force_log_scale) {
    if (N < 1)
        throw std::invalid_argument("reid_higher_order: order must be >= 1");
    MomentSet m = moments_from_standard_form(sf);

    bool use_log = force_log_scale || N > 18;
    Brackets b;
    if (!use_log) {
        b = direct_brackets(m, N);
        if (!b.finite) {
            b = log_brackets(m, N);
            use_log = true;
        }
    } else {
        b = log_brackets(m, N);
    }
    return {N, b.var_x, b.var_p, b.rhs, b.satisfied, use_log};
}

Order2ClosedForm reid_order2_closed_form(const StandardForm2& sf) {
    validate_standard_form(sf);
    double a2 = sf.a * sf.a;
    double b2 = sf.b * sf.b;
    double s = sf.c1 * sf.c1 + sf.c2 * sf.c2;
    double p = sf.c1 * sf.c2;
    double f1 = (b2 + 1.0) - s * s / (4.0 * (a2 + 1.0));
    double f2 = (b2 + 1.0) - p * p / (a2 + 1.0);
    double rhs = 4.0 * b2;
    double tol = kRelTol * std::max(1.0, rhs);
    return {f1, f2, rhs, f1 * f2 >= rhs - tol};
}

AmGmCheck amgm_check(const StandardForm2& sf) {
    MomentSet m = moments_from_standard_form(sf);

    double lhs1 = sf.a * sf.a * (sf.b - 1.0) * (sf.b - 1.0);
    double rhs1 = 0.25 * std::pow(sf.c1 * sf.c1 + sf.c2 * sf.c2, 2);
    bool ineq1 = lhs1 >= rhs1 - kRelTol * std::max(1.0, rhs1);

    double lhs2 = m.A * m.B + 0.5 * m.B;
    double rhs2 = m.C * m.C + m.D * m.D;
    bool ineq2 = lhs2 >= rhs2 - kRelTol * std::max(1.0, rhs2);

    return {ineq1, ineq2};
}

DetConditionSf det_condition_standard_form(const StandardForm2& sf) {
    validate_standard_form(sf);
    double ab = sf.a * sf.b;
    double lhs = (ab - sf.c1 * sf.c1) * (ab - sf.c2 * sf.c2);
    double rhs = sf.a * sf.a;
    double tol = kRelTol * std::max(1.0, rhs);
    return {lhs >= rhs - tol, lhs, rhs, std::abs(lhs - rhs) <= tol};
}

} // namespace gsteer
