// gsteer: command-line front end for the Gaussian steering toolkit.
//
// Exit codes: 0 success, 1 reproduction/campaign failure or unexpected
// runtime error, 2 invalid input state, 3 flag/usage error, 4 internal
// invariant violation.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsteer/campaigns.hpp"
#include "gsteer/channels.hpp"
#include "gsteer/state_io.hpp"

namespace {

using namespace gsteer;
using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, end);
}

std::string fmt(bool v) { return v ? "true" : "false"; }

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open \"" + out_path + "\" for writing");
    out << text;
    if (!out) throw std::runtime_error("writing \"" + out_path + "\" failed");
}

void emit_state(const CovarianceMatrix& g, const std::string& out_path) {
    emit_text(cm_to_string(g), out_path);
}

void emit_json(const json& j, const std::string& out_path) {
    emit_text(j.dump(2) + "\n", out_path);
}

// "lo:hi:step" -> inclusive grid.
std::vector<double> parse_grid(const std::string& spec) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
        throw std::invalid_argument("grid must look like lo:hi:step, got \"" + spec + "\"");
    if (!(step > 0.0) || hi < lo)
        throw std::invalid_argument("grid needs step > 0 and hi >= lo");
    std::vector<double> grid;
    long n = std::lround((hi - lo) / step);
    for (long k = 0; k <= n + 1; ++k) {
        double v = lo + static_cast<double>(k) * step;
        if (v > hi + 1e-9 * step) break;
        grid.push_back(v);
    }
    return grid;
}

SteerDirection parse_direction(const std::string& s) {
    if (s == "AtoB") return SteerDirection::AtoB;
    if (s == "BtoA") return SteerDirection::BtoA;
    throw std::invalid_argument("direction must be AtoB or BtoA");
}

json mode_set_json(const ModeSet& m) { return json(m); }

// --- single-state queries ---------------------------------------------

struct StateQueryArgs {
    std::string in_path;
    ModeSet from, to;
    double tol = -1.0;
    std::string out_path;
};

void run_validate(const StateQueryArgs& a) {
    CovarianceMatrix g = read_state_file(a.in_path);
    PsdVerdict v = validate_cm(g, a.tol);
    emit_json(json{{"physical", v.is_psd},
                   {"margin", v.margin},
                   {"tolerance", v.tolerance},
                   {"n_modes", g.n_modes()}},
              a.out_path);
}

void run_steer(const StateQueryArgs& a) {
    CovarianceMatrix g = read_state_file(a.in_path);
    SteeringVerdict v = steerable_gaussian(g, a.from, a.to, a.tol);
    emit_json(json{{"steerable", v.steerable},
                   {"lmi_margin", v.lmi_margin},
                   {"tolerance", v.tolerance},
                   {"marginal", v.marginal},
                   {"method", "lmi"},
                   {"from", mode_set_json(v.from)},
                   {"to", mode_set_json(v.to)}},
              a.out_path);
}

void run_detcond(const StateQueryArgs& a) {
    CovarianceMatrix g = read_state_file(a.in_path);
    DetCondition d = det_condition(g, a.from, a.to);
    emit_json(json{{"satisfied", d.satisfied},
                   {"det_global", d.det_global},
                   {"det_local_from", d.det_local_from},
                   {"tolerance", d.tolerance},
                   {"marginal", d.marginal}},
              a.out_path);
}

void run_ppt(const StateQueryArgs& a) {
    CovarianceMatrix g = read_state_file(a.in_path);
    PsdVerdict v = ppt_test(g, a.from, a.to, a.tol);
    emit_json(json{{"ppt", v.is_psd},
                   {"margin", v.margin},
                   {"tolerance", v.tolerance},
                   {"entangled_certified", !v.is_psd}},
              a.out_path);
}

void run_classify(const StateQueryArgs& a) {
    CovarianceMatrix g = read_state_file(a.in_path);
    DirectionClass c = classify_direction(g, a.from, a.to);
    SteeringVerdict ab = steerable_gaussian(g, a.from, a.to);
    SteeringVerdict ba = steerable_gaussian(g, a.to, a.from);
    emit_json(json{{"direction", to_string(c)},
                   {"a_to_b", json{{"steerable", ab.steerable}, {"lmi_margin", ab.lmi_margin}}},
                   {"b_to_a", json{{"steerable", ba.steerable}, {"lmi_margin", ba.lmi_margin}}}},
              a.out_path);
}

// --- sweeps --------------------------------------------------------------

struct SweepArgs {
    double r = 0.0;
    std::string grid_spec;
    std::string direction = "AtoB";
    bool refine = false;
    double xtol = 1e-7;
    std::string out_path;
};

void run_sweep(const SweepArgs& a, bool is_loss) {
    SteerDirection dir = parse_direction(a.direction);
    const char* param_name = is_loss ? "eta" : "G";
    auto state_at = [&](double p) {
        GaussianChannel ch = is_loss ? loss_channel(p) : amp_channel(p);
        return apply_channel(tmsv(a.r), ch, {1});
    };
    auto verdict_at = [&](double p) {
        CovarianceMatrix g = state_at(p);
        return dir == SteerDirection::AtoB ? steerable_gaussian(g, {0}, {1})
                                           : steerable_gaussian(g, {1}, {0});
    };

    std::ostringstream csv;
    if (a.refine) {
        std::vector<double> grid = parse_grid(a.grid_spec);
        double flip = bisect_flip([&](double p) { return verdict_at(p).steerable; },
                                  grid.front(), grid.back(), a.xtol);
        csv << "r," << param_name << "_threshold,direction\n"
            << fmt(a.r) << ',' << fmt(flip) << ',' << a.direction << '\n';
    } else {
        csv << "r," << param_name << ",direction,margin,steerable\n";
        for (double p : parse_grid(a.grid_spec)) {
            SteeringVerdict v = verdict_at(p);
            csv << fmt(a.r) << ',' << fmt(p) << ',' << a.direction << ','
                << fmt(v.lmi_margin) << ',' << fmt(v.steerable) << '\n';
        }
    }
    emit_text(csv.str(), a.out_path);
}

// --- campaigns -------------------------------------------------------------

struct CampaignArgs {
    std::string name;
    std::uint64_t seed = 20240811ULL;
    int count = 2000;
    std::string out_path;
};

const std::vector<double> kThresholdRs{0.3, 1.0, 2.0};

class KvCsv {
public:
    template <typename T>
    void add(const std::string& key, T value) {
        rows_ << key << ',' << value << '\n';
    }
    void add(const std::string& key, double value) { rows_ << key << ',' << fmt(value) << '\n'; }
    void add(const std::string& key, bool value) { rows_ << key << ',' << fmt(value) << '\n'; }
    std::string str() const { return "metric,value\n" + rows_.str(); }

private:
    std::ostringstream rows_;
};

int run_campaign(const CampaignArgs& a) {
    KvCsv csv;
    bool pass = false;
    if (a.name == "counterexample") {
        auto rep = campaigns::counterexample_report();
        csv.add("det_global", rep.det_global);
        csv.add("det_local", rep.det_local);
        csv.add("det_satisfied", rep.det_satisfied);
        csv.add("lmi_margin", rep.lmi_margin);
        csv.add("steerable", rep.steerable);
        csv.add("lmi_det", rep.lmi_det);
        csv.add("schur_nu_min", rep.schur_nu_min);
        csv.add("schur_nu_product", rep.schur_nu_product);
        pass = rep.pass;
    } else if (a.name == "loss") {
        auto rep = campaigns::loss_threshold_report(kThresholdRs, 1e-6);
        for (const auto& p : rep.b_to_a)
            csv.add("b_to_a_threshold_r" + fmt(p.r), p.measured);
        csv.add("a_to_b_all_steerable", rep.a_to_b_all_steerable);
        csv.add("a_to_b_dead_at_zero", rep.a_to_b_dead_at_zero);
        csv.add("b_to_a_dead_below_half", rep.b_to_a_dead_below_half);
        pass = rep.pass;
    } else if (a.name == "amp") {
        auto rep = campaigns::amp_threshold_report(kThresholdRs, 1e-6);
        for (const auto& p : rep.a_to_b) {
            csv.add("a_to_b_threshold_r" + fmt(p.r), p.measured);
            csv.add("a_to_b_expected_r" + fmt(p.r), p.expected);
        }
        csv.add("b_to_a_all_steerable", rep.b_to_a_all_steerable);
        pass = rep.pass;
    } else if (a.name == "detcond-equiv") {
        auto rep = campaigns::detcond_equivalence_campaign(a.seed, a.count);
        csv.add("total", rep.total);
        csv.add("excluded", rep.excluded);
        csv.add("disagreements", rep.disagreements);
        pass = rep.pass();
    } else if (a.name == "peres") {
        auto rep = campaigns::peres_campaign(a.seed, a.count);
        csv.add("total", rep.total);
        csv.add("steerable", rep.steerable);
        csv.add("npt", rep.npt);
        csv.add("violations", rep.violations);
        csv.add("witness_found", rep.witness_found);
        csv.add("witness_seed", rep.witness_seed);
        csv.add("witness_ppt_margin", rep.witness_ppt_margin);
        pass = rep.pass();
    } else if (a.name == "monogamy" || a.name == "monogamy-symmetric") {
        auto rep = a.name == "monogamy"
                       ? campaigns::monogamy_campaign(a.seed, a.count)
                       : campaigns::symmetric_monogamy_campaign(a.seed, a.count);
        csv.add("total", rep.total);
        csv.add("a_steer", rep.a_steer);
        csv.add("e_steer", rep.e_steer);
        csv.add("violations", rep.violations);
        pass = rep.pass();
    } else if (a.name == "pairmix") {
        auto rep = campaigns::pair_mixture_report();
        csv.add("boundary_ab", rep.boundary_ab);
        csv.add("boundary_bc", rep.boundary_bc);
        csv.add("npt_both_below", rep.npt_both_below);
        csv.add("ppt_both_above", rep.ppt_both_above);
        csv.add("pairs_never_steerable", rep.pairs_never_steerable);
        pass = rep.pass;
    } else if (a.name == "reid-chain") {
        auto rep = campaigns::reid_chain_campaign(a.seed, a.count, 6);
        csv.add("total", rep.total);
        csv.add("examined", rep.examined);
        csv.add("amgm_disagreements", rep.amgm_disagreements);
        csv.add("amgm_violations", rep.amgm_violations);
        csv.add("order_violations", rep.order_violations);
        csv.add("max_closed_form_gap", rep.max_closed_form_gap);
        csv.add("epr_violation_seen", rep.epr_violation_seen);
        pass = rep.pass(a.count);
    } else if (a.name == "structural") {
        auto rep = campaigns::structural_campaign(a.seed, a.count, std::max(1, a.count / 4));
        csv.add("pure_total", rep.pure_total);
        csv.add("max_pure_det_err", rep.max_pure_det_err);
        csv.add("max_pure_nu_err", rep.max_pure_nu_err);
        csv.add("unphysical_pure", rep.unphysical_pure);
        csv.add("aux_total", rep.aux_total);
        csv.add("max_schur_det_rel_err", rep.max_schur_det_rel_err);
        csv.add("max_embed_det_rel_err", rep.max_embed_det_rel_err);
        csv.add("max_nu_invariance_err", rep.max_nu_invariance_err);
        pass = rep.pass();
    } else {
        throw std::invalid_argument("unknown campaign \"" + a.name + "\"");
    }
    csv.add("pass", pass);
    emit_text(csv.str(), a.out_path);
    return pass ? 0 : 1;
}

// --- repro ----------------------------------------------------------------

struct ReproArgs {
    std::string only;
    std::uint64_t seed = 20240811ULL;
    int count = 2000;
    bool full = false;
    double coshr = 0.0; // >= 1 switches pairmix to a focused check at that point
};

struct ReproOutcome {
    bool pass;
    std::string detail;
};

int run_repro(const ReproArgs& a) {
    int count = a.full ? 10000 : a.count;
    int small = a.full ? 1000 : std::min(a.count, 1000);

    auto write_failure = [](const std::string& name, const CovarianceMatrix& g) {
        std::string path = "repro_failure_" + name + ".json";
        write_state_file(path, g);
        return " (offending state written to " + path + ")";
    };

    std::vector<std::pair<std::string, std::function<ReproOutcome()>>> items;

    items.emplace_back("counterexample", [&]() -> ReproOutcome {
        auto rep = campaigns::counterexample_report();
        std::ostringstream d;
        d << "det_global=" << fmt(rep.det_global) << " det_local=" << fmt(rep.det_local)
          << " lmi_margin=" << fmt(rep.lmi_margin) << " lmi_det=" << fmt(rep.lmi_det)
          << " schur_nu_min=" << fmt(rep.schur_nu_min);
        return {rep.pass, d.str()};
    });

    items.emplace_back("loss", [&]() -> ReproOutcome {
        auto rep = campaigns::loss_threshold_report(kThresholdRs, 1e-6);
        std::ostringstream d;
        for (const auto& p : rep.b_to_a) d << "thr(r=" << fmt(p.r) << ")=" << fmt(p.measured) << ' ';
        d << "a_to_b_all=" << fmt(rep.a_to_b_all_steerable)
          << " dead_at_zero=" << fmt(rep.a_to_b_dead_at_zero);
        return {rep.pass, d.str()};
    });

    items.emplace_back("amp", [&]() -> ReproOutcome {
        auto rep = campaigns::amp_threshold_report(kThresholdRs, 1e-6);
        std::ostringstream d;
        for (const auto& p : rep.a_to_b)
            d << "thr(r=" << fmt(p.r) << ")=" << fmt(p.measured) << "~" << fmt(p.expected) << ' ';
        d << "b_to_a_all=" << fmt(rep.b_to_a_all_steerable);
        return {rep.pass, d.str()};
    });

    items.emplace_back("detcond-equiv", [&]() -> ReproOutcome {
        auto rep = campaigns::detcond_equivalence_campaign(a.seed, count);
        std::ostringstream d;
        d << "total=" << rep.total << " excluded=" << rep.excluded
          << " disagreements=" << rep.disagreements;
        std::string extra;
        if (!rep.pass() && rep.disagreements > 0) {
            ModeSet from, to;
            int i = static_cast<int>(rep.first_bad_seed - a.seed);
            extra = write_failure("detcond-equiv",
                                  campaigns::equivalence_sample(a.seed, i, from, to));
        }
        return {rep.pass(), d.str() + extra};
    });

    items.emplace_back("peres", [&]() -> ReproOutcome {
        auto rep = campaigns::peres_campaign(a.seed, count);
        std::ostringstream d;
        d << "total=" << rep.total << " steerable=" << rep.steerable << " npt=" << rep.npt
          << " violations=" << rep.violations << " witness=" << fmt(rep.witness_found);
        if (rep.witness_found)
            d << " witness_ppt_margin=" << fmt(rep.witness_ppt_margin)
              << " witness_margins=(" << fmt(rep.witness_margin_ab) << ','
              << fmt(rep.witness_margin_ba) << ')';
        return {rep.pass(), d.str()};
    });

    items.emplace_back("monogamy", [&]() -> ReproOutcome {
        auto rep = campaigns::monogamy_campaign(a.seed, small);
        std::ostringstream d;
        d << "total=" << rep.total << " a_steer=" << rep.a_steer << " e_steer=" << rep.e_steer
          << " violations=" << rep.violations;
        std::string extra;
        if (!rep.pass() && rep.violations > 0) {
            ModeSet pa, pe;
            int steered = 0;
            int i = static_cast<int>(rep.first_bad_seed - a.seed);
            extra = write_failure("monogamy",
                                  campaigns::monogamy_sample(a.seed, i, pa, pe, steered));
        }
        return {rep.pass(), d.str() + extra};
    });

    items.emplace_back("monogamy-symmetric", [&]() -> ReproOutcome {
        auto rep = campaigns::symmetric_monogamy_campaign(a.seed, small);
        std::ostringstream d;
        d << "total=" << rep.total << " a_steer=" << rep.a_steer << " e_steer=" << rep.e_steer
          << " violations=" << rep.violations;
        std::string extra;
        if (!rep.pass() && rep.violations > 0) {
            ModeSet pa, pe;
            int steered = 0;
            int i = static_cast<int>(rep.first_bad_seed - a.seed);
            extra = write_failure(
                "monogamy-symmetric",
                campaigns::symmetric_monogamy_sample(a.seed, i, pa, pe, steered));
        }
        return {rep.pass(), d.str() + extra};
    });

    items.emplace_back("pairmix", [&]() -> ReproOutcome {
        if (a.coshr >= 1.0) {
            // Focused check of the pair-split partial transposes at one point.
            CovarianceMatrix g = pair_mixture_cm(a.coshr);
            PsdVerdict ab = ppt_test(g, {0}, {1});
            PsdVerdict bc = ppt_test(g, {1}, {2});
            bool near_boundary = std::abs(a.coshr - 3.0) <= 1e-3;
            bool expect_ppt = a.coshr >= 3.0;
            bool ok = near_boundary ||
                      (ab.is_psd == expect_ppt && bc.is_psd == expect_ppt);
            std::ostringstream d;
            d << "coshr=" << fmt(a.coshr) << " ppt_ab=" << fmt(ab.is_psd)
              << " ppt_bc=" << fmt(bc.is_psd) << " expected="
              << (near_boundary ? "boundary" : (expect_ppt ? "ppt" : "npt"));
            return {ok, d.str()};
        }
        auto rep = campaigns::pair_mixture_report();
        std::ostringstream d;
        d << "boundary_ab=" << fmt(rep.boundary_ab) << " boundary_bc=" << fmt(rep.boundary_bc)
          << " npt_below=" << fmt(rep.npt_both_below) << " ppt_above=" << fmt(rep.ppt_both_above)
          << " pairs_never_steerable=" << fmt(rep.pairs_never_steerable);
        return {rep.pass, d.str()};
    });

    items.emplace_back("reid-chain", [&]() -> ReproOutcome {
        auto rep = campaigns::reid_chain_campaign(a.seed, count, 6);
        std::ostringstream d;
        d << "total=" << rep.total << " amgm_viol=" << rep.amgm_violations
          << " order_viol=" << rep.order_violations << " closed_form_gap="
          << fmt(rep.max_closed_form_gap) << " epr_violation=" << fmt(rep.epr_violation_seen);
        std::string extra;
        if (rep.amgm_violations + rep.order_violations + rep.amgm_disagreements > 0) {
            int i = static_cast<int>(rep.first_bad_seed - a.seed);
            extra = write_failure("reid-chain", campaigns::reid_sample(a.seed, i).to_cm());
        }
        return {rep.pass(count), d.str() + extra};
    });

    items.emplace_back("structural", [&]() -> ReproOutcome {
        auto rep = campaigns::structural_campaign(a.seed, count, std::max(1, count / 4));
        std::ostringstream d;
        d << "pure_total=" << rep.pure_total << " max_det_err=" << fmt(rep.max_pure_det_err)
          << " max_nu_err=" << fmt(rep.max_pure_nu_err)
          << " schur_det_err=" << fmt(rep.max_schur_det_rel_err)
          << " embed_det_err=" << fmt(rep.max_embed_det_rel_err)
          << " nu_invariance_err=" << fmt(rep.max_nu_invariance_err);
        return {rep.pass(), d.str()};
    });

    std::string only = a.only == "remark" ? "pairmix" : a.only;
    int ran = 0, passed = 0;
    for (const auto& [name, run] : items) {
        if (!only.empty() && only != name) continue;
        ++ran;
        ReproOutcome out = run();
        if (out.pass) ++passed;
        std::cout << (out.pass ? "PASS " : "FAIL ") << name << ' ' << out.detail << '\n';
    }
    if (ran == 0) throw std::invalid_argument("unknown repro item \"" + a.only + "\"");
    std::cout << "repro: " << passed << "/" << ran << " items passed\n";
    return passed == ran ? 0 : 1;
}

// --- wiring -----------------------------------------------------------------

int run_command(int argc, char** argv) {
    CLI::App app{"Gaussian steering toolkit: physicality, steering, separability,"
                 " monogamy, noisy channels, and higher-order inference criteria"
                 " for multimode Gaussian states"};
    app.footer("States are JSON objects {\"n_modes\": n, \"ordering\":"
               " \"xp-interleaved\", \"matrix\": [[...], ...]} with a symmetric"
               " 2n x 2n covariance matrix (vacuum variance 1).");
    app.require_subcommand(1);
    int exit_code = 0;

    // validate / steer / detcond / ppt / classify share the argument shape.
    StateQueryArgs q;

    auto add_state_query = [&](const char* name, const char* desc, bool needs_parties,
                               const char* from_name, const char* to_name) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--in,--file", q.in_path, "state JSON file")->required();
        if (needs_parties) {
            sub->add_option(from_name, q.from, "mode indices (comma separated)")
                ->required()
                ->delimiter(',');
            sub->add_option(to_name, q.to, "mode indices (comma separated)")
                ->required()
                ->delimiter(',');
        }
        sub->add_option("--tol", q.tol, "PSD tolerance override");
        sub->add_option("--out", q.out_path, "write result here instead of stdout");
        return sub;
    };

    add_state_query("validate", "Test the physicality (uncertainty) condition of a state",
                    false, "", "")
        ->callback([&] { run_validate(q); });
    add_state_query("steer",
                    "Gaussian steerability of --to by Gaussian measurements on --from", true,
                    "--from", "--to")
        ->callback([&] { run_steer(q); });
    add_state_query("detcond", "Determinant (purity) condition for non-steerability", true,
                    "--from", "--to")
        ->callback([&] { run_detcond(q); });
    add_state_query("ppt", "Positive-partial-transpose separability test for (--a | --b)",
                    true, "--a", "--b")
        ->callback([&] { run_ppt(q); });
    add_state_query("classify", "Two-way steering classification of (--a | --b)", true,
                    "--a", "--b")
        ->callback([&] { run_classify(q); });

    // channel
    std::string ch_kind, ch_in, ch_out;
    double ch_param = 0.0;
    ModeSet ch_modes;
    CLI::App* channel = app.add_subcommand("channel", "Send a state through a noisy channel");
    channel->add_option("--in,--file", ch_in, "state JSON file")->required();
    channel->add_option("--kind", ch_kind, "channel kind")
        ->required()
        ->check(CLI::IsMember({"loss", "amp"}));
    channel->add_option("--param", ch_param, "transmittance eta (loss) or gain G (amp)")
        ->required();
    channel->add_option("--modes", ch_modes, "target modes (one per channel mode)")
        ->required()
        ->delimiter(',');
    channel->add_option("--out", ch_out, "write the transformed state here");
    channel->callback([&] {
        CovarianceMatrix g = read_state_file(ch_in);
        GaussianChannel ch = ch_kind == "loss" ? loss_channel(ch_param) : amp_channel(ch_param);
        emit_state(apply_channel(g, ch, ch_modes), ch_out);
    });

    // make
    CLI::App* make = app.add_subcommand("make", "Construct canonical states");
    make->require_subcommand(1);
    double mk_r = 0.0, mk_coshr = 2.0;
    int mk_modes = 1;
    std::string mk_out;

    CLI::App* mk_tmsv = make->add_subcommand("tmsv", "Two-mode squeezed vacuum");
    mk_tmsv->add_option("--r", mk_r, "squeezing parameter (>= 0)")->required();
    mk_tmsv->add_option("--out", mk_out, "output file");
    mk_tmsv->callback([&] { emit_state(tmsv(mk_r), mk_out); });

    CLI::App* mk_vac = make->add_subcommand("vacuum", "n-mode vacuum");
    mk_vac->add_option("--modes", mk_modes, "mode count")->required();
    mk_vac->add_option("--out", mk_out, "output file");
    mk_vac->callback([&] { emit_state(vacuum_cm(mk_modes), mk_out); });

    CLI::App* mk_pair = make->add_subcommand(
        "pairmix", "Three-mode two-branch pair mixture (entangled yet never steerable)");
    mk_pair->alias("remark");
    mk_pair->add_option("--coshr", mk_coshr, "pair covariance entry cosh r (>= 1)")->required();
    mk_pair->add_option("--out", mk_out, "output file");
    mk_pair->callback([&] { emit_state(pair_mixture_cm(mk_coshr), mk_out); });

    CLI::App* mk_ce = make->add_subcommand(
        "counterexample", "Three-mode state beating the determinant condition");
    mk_ce->add_option("--out", mk_out, "output file");
    mk_ce->callback([&] { emit_state(counterexample_cm(), mk_out); });

    // sweep
    CLI::App* sweep = app.add_subcommand("sweep", "Steering margin across a channel parameter");
    sweep->require_subcommand(1);
    SweepArgs sw;

    CLI::App* sw_loss = sweep->add_subcommand("loss", "Loss channel on mode B of tmsv(r)");
    sw_loss->add_option("--r", sw.r, "squeezing parameter")->required();
    sw_loss->add_option("--eta", sw.grid_spec, "transmittance grid lo:hi:step")
        ->default_val("0:1:0.01");
    sw_loss->add_option("--direction", sw.direction, "AtoB or BtoA")->required();
    sw_loss->add_flag("--refine", sw.refine, "bisect the steerable flip inside the grid range");
    sw_loss->add_option("--tol", sw.xtol, "bisection tolerance");
    sw_loss->add_option("--out", sw.out_path, "output CSV file");
    sw_loss->footer("CSV columns: r,eta,direction,margin,steerable;"
                    " with --refine: r,eta_threshold,direction");
    sw_loss->callback([&] { run_sweep(sw, true); });

    CLI::App* sw_amp = sweep->add_subcommand("amp", "Amplifier on mode B of tmsv(r)");
    sw_amp->add_option("--r", sw.r, "squeezing parameter")->required();
    sw_amp->add_option("--G", sw.grid_spec, "gain grid lo:hi:step")->default_val("1:5:0.1");
    sw_amp->add_option("--direction", sw.direction, "AtoB or BtoA")->required();
    sw_amp->add_flag("--refine", sw.refine, "bisect the steerable flip inside the grid range");
    sw_amp->add_option("--tol", sw.xtol, "bisection tolerance");
    sw_amp->add_option("--out", sw.out_path, "output CSV file");
    sw_amp->footer("CSV columns: r,G,direction,margin,steerable;"
                   " with --refine: r,G_threshold,direction");
    sw_amp->callback([&] { run_sweep(sw, false); });

    // campaign
    CampaignArgs ca;
    CLI::App* campaign = app.add_subcommand("campaign", "Randomized property campaigns");
    campaign->add_option("name", ca.name, "campaign name")
        ->required()
        ->check(CLI::IsMember({"counterexample", "loss", "amp", "detcond-equiv", "peres",
                               "monogamy", "monogamy-symmetric", "pairmix", "reid-chain",
                               "structural"}));
    campaign->add_option("--seed", ca.seed, "base seed");
    campaign->add_option("--count", ca.count, "sample count")->check(CLI::PositiveNumber);
    campaign->add_option("--out", ca.out_path, "output CSV file");
    campaign->footer("CSV columns: metric,value (one row per campaign metric,"
                     " final row pass,<bool>); exit 1 if the campaign fails.");
    campaign->callback([&] { exit_code = run_campaign(ca); });

    // repro
    ReproArgs ra;
    CLI::App* repro = app.add_subcommand(
        "repro", "Re-run every pinned quantitative claim and report pass/fail");
    repro->add_option("--only", ra.only, "run a single item");
    repro->add_option("--seed", ra.seed, "base seed");
    repro->add_option("--count", ra.count, "sample count for randomized items");
    repro->add_flag("--full", ra.full, "acceptance-scale sample counts");
    repro->add_option("--coshr", ra.coshr,
                      "focus the pairmix item on one cosh r value (pair PPT check)")
        ->check(CLI::Range(1.0, 1e9));
    repro->footer("Prints one 'PASS <name> <details>' line per item and a x/y summary;"
                  " exit 1 if any item fails.");
    repro->callback([&] { exit_code = run_repro(ra); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant violation: " << e.what() << '\n';
        return 4;
    } catch (const InvalidState& e) {
        std::cerr << "invalid state: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) { return run_command(argc, argv); }
