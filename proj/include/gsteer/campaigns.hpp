#pragma once

#include <cstdint>
#include <vector>

#include "gsteer/channels.hpp"
#include "gsteer/reid.hpp"
#include "gsteer/sampling.hpp"
#include "gsteer/steering.hpp"

namespace gsteer::campaigns {

/// Deterministic sample builders used by the randomized campaigns below.
/// Exposing them lets failures be regenerated from (seed0, index) alone.
CovarianceMatrix equivalence_sample(std::uint64_t seed0, int i, ModeSet& from, ModeSet& to);
CovarianceMatrix peres_sample(std::uint64_t seed0, int i, ModeSet& a, ModeSet& b);
CovarianceMatrix monogamy_sample(std::uint64_t seed0, int i, ModeSet& a, ModeSet& e,
                                 int& steered);
CovarianceMatrix symmetric_monogamy_sample(std::uint64_t seed0, int i, ModeSet& a,
                                           ModeSet& e, int& steered);
StandardForm2 reid_sample(std::uint64_t seed0, int attempt);

/// Reproduction of the fixed three-mode counterexample: the determinant
/// condition passes while the 1 -> 2-mode steering LMI certifies steering.
struct CounterexampleReport {
    double det_global;  ///< expected 9.187103916015996
    double det_local;   ///< expected 4.0
    bool det_satisfied; ///< expected true
    double lmi_margin;  ///< expected about -0.1008
    bool steerable;     ///< expected true
    double lmi_det;     ///< det of the steering LMI matrix; expected about -1.958
    double schur_nu_min;     ///< min symplectic value of gamma_B - C^T gamma_A^{-1} C
    double schur_nu_product; ///< product of those values; >= 1 certifies det condition
    bool pass;
};
CounterexampleReport counterexample_report();

struct ThresholdPoint {
    double r;
    double measured;
    double expected;
    bool pass;
};

/// Loss channel on the steered mode of tmsv(r): steering toward the lossy
/// mode survives for every eta > 0, while steering *by* the lossy mode dies
/// exactly at eta = 1/2, independent of r.
struct LossThresholdReport {
    std::vector<ThresholdPoint> b_to_a; ///< bisected flip, expected 0.5
    bool a_to_b_all_steerable;  ///< at every grid point eta in {0.01, ..., 1}
    bool a_to_b_dead_at_zero;   ///< full loss leaves a product state
    bool b_to_a_dead_below_half;
    bool pass;
};
LossThresholdReport loss_threshold_report(const std::vector<double>& rs, double tol);

/// Amplifier on the steered mode of tmsv(r): steering toward the amplified
/// mode dies at G = 2 cosh(2r) / (cosh(2r) + 1) < 2, steering by it never
/// does.
struct AmpThresholdReport {
    std::vector<ThresholdPoint> a_to_b; ///< bisected flip vs closed form
    bool b_to_a_all_steerable;
    bool pass;
};
AmpThresholdReport amp_threshold_report(const std::vector<double>& rs, double tol);

/// Determinant condition versus steering LMI for single-mode steered
/// parties: the two verdicts must agree on every sample outside a 1e-7
/// margin band around the boundary.
struct EquivalenceReport {
    int total = 0;    ///< decided samples
    int excluded = 0; ///< samples inside the margin band
    int disagreements = 0;
    std::uint64_t first_bad_seed = 0;
    bool pass() const { return total > 0 && disagreements == 0; }
};
EquivalenceReport detcond_equivalence_campaign(std::uint64_t seed0, int count);

/// Steerability implies entanglement certified by a negative partial
/// transpose, in either direction; the converse fails, and a witness
/// (NPT yet two-way unsteerable) must show up.
struct PeresReport {
    int total = 0;
    int steerable = 0;
    int npt = 0;
    int violations = 0; ///< steerable but PPT, both beyond the margin band
    bool witness_found = false;
    std::uint64_t witness_seed = 0;
    double witness_ppt_margin = 0.0;
    double witness_margin_ab = 0.0;
    double witness_margin_ba = 0.0;
    bool pass() const { return total > 0 && violations == 0 && witness_found; }
};
PeresReport peres_campaign(std::uint64_t seed0, int count);

/// Two parties can never both steer the same single mode.  Violations are
/// counted by catching the InternalError the audit throws.
struct MonogamyReport {
    int total = 0;
    int a_steer = 0;
    int e_steer = 0;
    int violations = 0;
    std::uint64_t first_bad_seed = 0;
    bool pass() const { return total > 0 && violations == 0; }
};
MonogamyReport monogamy_campaign(std::uint64_t seed0, int count);
MonogamyReport symmetric_monogamy_campaign(std::uint64_t seed0, int count);

/// Behaviour of the two-branch pair mixture: both adjacent pairs are NPT
/// exactly for cosh_r < 3 (checked by bisection against 3), and no
/// two-mode pair is ever steerable in either direction, entangled or not.
/// (The shared mode does steer the joint party formed by the other two;
/// only the pair reductions are steering-free.)
struct PairMixtureReport {
    double boundary_ab; ///< PPT flip of pair {A, B}; expected 3
    double boundary_bc; ///< PPT flip of pair {B, C}; expected 3
    bool npt_both_below;
    bool ppt_both_above;
    bool pairs_never_steerable;
    bool pass;
};
PairMixtureReport pair_mixture_report(double boundary_tol = 1e-3);

/// Chain of implications on random two-mode standard forms satisfying the
/// determinant condition: both mean/geometric-mean inequalities hold and
/// every inference criterion up to `max_order` is satisfied.  Also checks
/// the order-2 report against its independently derived closed form on
/// every sample, and that the steerable two-mode squeezed family violates
/// the order-1 bound.
struct ReidChainReport {
    int total = 0;    ///< det-condition-satisfying samples examined
    int examined = 0; ///< all samples (closed-form check runs on each)
    int amgm_disagreements = 0;
    int amgm_violations = 0;
    int order_violations = 0;
    double max_closed_form_gap = 0.0; ///< relative, order 2 vs closed form
    bool epr_violation_seen = false;
    std::uint64_t first_bad_seed = 0;
    bool pass(int wanted, double gap_tol = 1e-9) const {
        return total >= wanted && amgm_disagreements == 0 && amgm_violations == 0 &&
               order_violations == 0 && max_closed_form_gap <= gap_tol &&
               epr_violation_seen;
    }
};
ReidChainReport reid_chain_campaign(std::uint64_t seed0, int count, int max_order);

/// Numerical backbone checks on random inputs: pure states have unit
/// determinant and unit symplectic spectrum, the symplectic spectrum is
/// invariant under random symplectics, the determinant factorizes through
/// Schur complements, and Hermitian-pair determinants square to embedding
/// determinants.
struct StructuralReport {
    int pure_total = 0;
    double max_pure_det_err = 0.0;
    double max_pure_nu_err = 0.0;
    int unphysical_pure = 0;
    int aux_total = 0;
    double max_schur_det_rel_err = 0.0;
    double max_embed_det_rel_err = 0.0;
    double max_nu_invariance_err = 0.0;
    bool pass(double tol = 1e-8) const {
        return pure_total > 0 && aux_total > 0 && unphysical_pure == 0 &&
               max_pure_det_err <= tol && max_pure_nu_err <= tol &&
               max_schur_det_rel_err <= tol && max_embed_det_rel_err <= tol &&
               max_nu_invariance_err <= tol;
    }
};
StructuralReport structural_campaign(std::uint64_t seed0, int pure_count, int aux_count);

} // namespace gsteer::campaigns
