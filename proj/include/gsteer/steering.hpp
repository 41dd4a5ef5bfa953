#pragma once

#include "gsteer/gaussian.hpp"

namespace gsteer {

/// How a steering verdict was reached.
enum class SteerMethod { Lmi, Determinant };

/// Outcome of a steerability test for Gaussian measurements on the
/// steering party.
struct SteeringVerdict {
    bool steerable;    ///< true when the no-steering LMI fails
    double lmi_margin; ///< smallest eigenvalue of gamma + i (0_from + Omega_to)
    double tolerance;  ///< PSD tolerance used
    bool marginal;     ///< |lmi_margin| <= tolerance: verdict sits on the boundary
    SteerMethod method;
    ModeSet from;
    ModeSet to;
};

/// Outcome of the determinant (purity) condition det gamma >= det gamma_from,
/// which is necessary for non-steerability in general and equivalent to it
/// when the steered party has exactly one mode.
struct DetCondition {
    bool satisfied;
    double det_global;     ///< det of the from+to reduced state
    double det_local_from; ///< det of the steering party's reduced state
    double tolerance;
    bool marginal; ///< |det_global - det_local_from| <= tolerance
};

/// Steering classification of a bipartition.
enum class DirectionClass { TwoWay, OnlyAtoB, OnlyBtoA, NoWay };

const char* to_string(DirectionClass c);

/// Result of testing whether two parties can simultaneously steer the same
/// single mode.  `consistent` is always true on return; a violation throws
/// InternalError instead, because it would contradict a proven monogamy
/// theorem.
struct MonogamyAudit {
    bool a_steers;
    bool e_steers;
    bool consistent;
};

/// Gaussian steerability of `to` by Gaussian measurements on `from`:
/// the state is non-steerable iff gamma_{from u to} + i (0_from + Omega_to)
/// is PSD.  Modes outside the two sets are traced out first.  The full
/// input state must be physical.
SteeringVerdict steerable_gaussian(const CovarianceMatrix& g, const ModeSet& from,
                                   const ModeSet& to, double tol = -1.0);

/// Determinant condition det gamma_{from u to} >= det gamma_from, with a
/// relative tolerance band of 1e-9 * max(1, |det gamma_from|).
DetCondition det_condition(const CovarianceMatrix& g, const ModeSet& from,
                           const ModeSet& to);

/// Positive-partial-transpose test for the bipartition (a | b): separable
/// (by PPT) iff gamma_{a u b} + i (-Omega_a + Omega_b) is PSD.  A negative
/// verdict (NPT) certifies entanglement.
PsdVerdict ppt_test(const CovarianceMatrix& g, const ModeSet& a, const ModeSet& b,
                    double tol = -1.0);

/// Classify the bipartition by running the steering LMI in both directions.
/// Cross-checks fire on non-marginal inconsistencies:
///  - for a single-mode steered party, the determinant condition must agree
///    with the LMI verdict;
///  - a strictly one-way A -> B configuration of two single modes must obey
///    the purity ordering det gamma_B <= det gamma_AB < det gamma_A.
DirectionClass classify_direction(const CovarianceMatrix& g, const ModeSet& a,
                                  const ModeSet& b);

/// Test that parties `a` and `e` cannot both steer the single mode
/// `steered`.  Throws InternalError if both LMIs report steerable beyond
/// tolerance, since that configuration is impossible.
MonogamyAudit monogamy_audit(const CovarianceMatrix& g, const ModeSet& a,
                             const ModeSet& e, int steered);

} // namespace gsteer
