#pragma once

#include "gsteer/gaussian.hpp"

namespace gsteer {

/// Symmetrically ordered moment parameters of a two-mode standard form
/// (a, b, c1, c2):
///   A = (a - 1)/2,  B = (b - 1)/2,
///   C = (c1 - c2)/4,  D = -(c1 + c2)/4.
/// A and B are the thermal occupations of the local modes; C and D the
/// two-mode correlation amplitudes.  For a standard form with c1 >= |c2|
/// one has A, B, C >= 0 and D <= 0.
struct MomentSet {
    double A;
    double B;
    double C;
    double D;
};

MomentSet moments_from_standard_form(const StandardForm2& sf);

/// Order-N inference criterion on the product of inferred variances of the
/// N-th power quadratures X^N and P^N of mode B, given measurements on A.
/// The state admits a local (non-steering) model at this order only if
///   var_x_inf * var_p_inf >= rhs,
/// where rhs = (N! ((B+1)^N - B^N))^2 / 4.  A violation witnesses steering
/// of B through the order-N quadratures.
struct OrderNReport {
    int N;
    double var_x_inf; ///< inferred variance of X^(N); N!/2 * bracket_x
    double var_p_inf; ///< inferred variance of P^(N)
    double rhs;       ///< (N! ((B+1)^N - B^N))^2 / 4
    bool satisfied;   ///< product >= rhs (within relative tolerance 1e-9)
    bool log_scale_used;
};

/// Evaluate the order-N criterion.  N must be >= 1; the standard form must
/// be physical.  Orders above 18 (or any order whose direct evaluation
/// overflows) are computed in signed-log arithmetic, which decides
/// `satisfied` exactly; in that regime the reported variances may be
/// +/-inf when they exceed double range.  `force_log_scale` exists so
/// tests can compare both evaluation paths at small N.
OrderNReport reid_higher_order(const StandardForm2& sf, int N,
                               bool force_log_scale = false);

/// Independently derived closed form of the order-2 criterion:
///   f1 = (b^2+1) - (c1^2 + c2^2)^2 / (4 (a^2+1)),
///   f2 = (b^2+1) - (c1 c2)^2 / (a^2+1),
/// satisfied iff f1 * f2 >= 4 b^2.  The factors relate to the general-N
/// report by f1 = 2 var_x_inf, f2 = 2 var_p_inf, 4 b^2 = 4 rhs.
struct Order2ClosedForm {
    double f1;
    double f2;
    double rhs_product; ///< 4 b^2
    bool satisfied;
};
Order2ClosedForm reid_order2_closed_form(const StandardForm2& sf);

/// The two equivalent mean-versus-geometric-mean inequalities implied by
/// the determinant condition on a two-mode standard form:
///   ineq1:  a^2 (b-1)^2 >= (c1^2 + c2^2)^2 / 4   (covariance variables)
///   ineq2:  A B >= C^2 + D^2 - B/2               (moment variables)
/// They are algebraically identical and must agree on every physical
/// standard form (up to the tolerance band).
struct AmGmCheck {
    bool ineq1;
    bool ineq2;
};
AmGmCheck amgm_check(const StandardForm2& sf);

/// Determinant condition det gamma >= det gamma_A expressed directly in
/// standard-form variables:
///   (a b - c1^2)(a b - c2^2) >= a^2.
struct DetConditionSf {
    bool satisfied;
    double lhs; ///< (ab - c1^2)(ab - c2^2) = det gamma
    double rhs; ///< a^2 = det gamma_A
    bool marginal;
};
DetConditionSf det_condition_standard_form(const StandardForm2& sf);

} // namespace gsteer
