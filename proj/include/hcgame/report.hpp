#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hcgame/classical.hpp"
#include "hcgame/inequalities.hpp"
#include "hcgame/json_io.hpp"
#include "hcgame/nosignalling.hpp"
#include "hcgame/parallel.hpp"
#include "hcgame/quantum.hpp"
#include "hcgame/rational.hpp"

namespace hcgame {

/// One named comparison inside a verification suite.
struct CheckRecord {
    std::string name;
    json expected;
    json actual;
    double tolerance = 0;
    /// Distance to failure; >= 0 passes for inequality checks.
    double margin = 0;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    bool pass = true;
    std::uint64_t seed = 42;
    std::vector<CheckRecord> checks;
    /// Suite-specific top-level fields.
    json fields = json::object();

    void add(CheckRecord r) {
        pass = pass && r.pass;
        checks.push_back(std::move(r));
    }

    void merge(const VerificationReport& sub) {
        for (const CheckRecord& r : sub.checks) {
            CheckRecord c = r;
            c.name = sub.suite + "/" + c.name;
            add(std::move(c));
        }
        fields[sub.suite] = sub.fields;
        pass = pass && sub.pass;
    }

    json to_json() const {
        json j = fields;
        j["suite"] = suite;
        j["pass"] = pass;
        j["seed"] = seed;
        json arr = json::array();
        for (const CheckRecord& c : checks) {
            arr.push_back({{"name", c.name},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"tolerance", c.tolerance},
                           {"margin", c.margin},
                           {"pass", c.pass}});
        }
        j["checks"] = arr;
        return j;
    }
};

/// A double rounded to 12 significant digits, as a JSON number.
inline json decimal_json(double v) { return std::stod(to_decimal_string(v)); }

// ---------------------------------------------------------------------------
// Value table

struct ValueRow {
    int m = 2;
    Rational omega_c;
    double omega_q = 0;
    double theta_star = 0;
    Rational omega_ns;
    /// omega_q - omega_c at full relative precision.
    double quantum_advantage = 0;
};

inline ValueRow value_row(int m) {
    const QuantumValue q = quantum_value_detail(m);
    // The explicit no-signalling correlation wins every round for every m;
    // build_ns_correlation checks it exactly for m <= 4.
    return {m, classical_value_formula(m), q.value, q.theta_star, Rational(1), q.advantage};
}

inline std::vector<ValueRow> value_rows(int m_min, int m_max, int jobs = 1) {
    if (m_min < 2 || m_max < m_min || m_max > 64) {
        throw std::invalid_argument("m range must satisfy 2 <= m_min <= m_max <= 64");
    }
    std::vector<ValueRow> rows(static_cast<size_t>(m_max - m_min + 1));
    parallel_for(rows.size(), jobs, [&](size_t k) { rows[k] = value_row(m_min + static_cast<int>(k)); });
    return rows;
}

inline std::string values_csv(const std::vector<ValueRow>& rows) {
    std::ostringstream os;
    os << "m,omega_c,omega_c_exact,omega_q,theta_star,omega_ns,quantum_advantage\n";
    for (const ValueRow& r : rows) {
        os << r.m << ',' << to_decimal_string(r.omega_c) << ',' << to_fraction_string(r.omega_c) << ','
           << to_decimal_string(r.omega_q) << ',' << to_decimal_string(r.theta_star) << ','
           << to_decimal_string(r.omega_ns) << ',' << to_decimal_string(r.quantum_advantage) << '\n';
    }
    return os.str();
}

inline json values_json(const std::vector<ValueRow>& rows) {
    json arr = json::array();
    for (const ValueRow& r : rows) {
        arr.push_back({{"m", r.m},
                       {"omega_c", std::stod(to_decimal_string(r.omega_c))},
                       {"omega_c_exact", to_fraction_string(r.omega_c)},
                       {"omega_q", decimal_json(r.omega_q)},
                       {"theta_star", decimal_json(r.theta_star)},
                       {"omega_ns", to_fraction_string(r.omega_ns)},
                       {"quantum_advantage", decimal_json(r.quantum_advantage)}});
    }
    return arr;
}

/// Table invariants: omega_c < omega_q < omega_ns = 1, and omega_q strictly
/// decreasing. Both are judged on (2^-m + advantage), which keeps full
/// precision where omega_q itself has rounded to 1/2.
inline VerificationReport check_value_rows(const std::vector<ValueRow>& rows) {
    VerificationReport rep;
    rep.suite = "values";
    for (size_t k = 0; k < rows.size(); k++) {
        const ValueRow& r = rows[k];
        rep.add({"ordering m=" + std::to_string(r.m), "omega_c < omega_q < omega_ns = 1",
                 decimal_json(r.quantum_advantage), 0, r.quantum_advantage,
                 r.quantum_advantage > 0 && r.omega_q < 1 && r.omega_ns == 1});
        if (k > 0) {
            const double prev = std::ldexp(1.0, -rows[k - 1].m) + rows[k - 1].quantum_advantage;
            const double cur = std::ldexp(1.0, -r.m) + r.quantum_advantage;
            rep.add({"decreasing m=" + std::to_string(r.m), "omega_q(m) < omega_q(m-1)", decimal_json(cur), 0,
                     prev - cur, cur < prev});
        }
    }
    return rep;
}

inline std::string figure3_csv(int m_max, int jobs = 1) {
    if (m_max < 2 || m_max > 64) {
        throw std::invalid_argument("figure3 needs 2 <= m_max <= 64");
    }
    std::ostringstream os;
    os << "m,classical,quantum,nosignalling\n";
    for (const ValueRow& r : value_rows(2, m_max, jobs)) {
        os << r.m << ',' << to_decimal_string(r.omega_c) << ',' << to_decimal_string(r.omega_q) << ','
           << to_decimal_string(r.omega_ns) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Verification suites

inline VerificationReport verify_classical_suite(int m, int jobs = 1) {
    VerificationReport rep;
    rep.suite = "classical";
    const ClassicalSearchResult found = brute_force_classical_value(m, /*restrict_parity=*/m == 3, jobs);
    const Rational formula = classical_value_formula(m);
    const bool match = found.value == formula;
    rep.fields = {{"m", m},
                  {"brute_force", to_fraction_string(found.value)},
                  {"formula", to_fraction_string(formula)},
                  {"match", match},
                  {"profiles", found.profiles},
                  {"maximizer", to_json(found.maximizer)}};
    rep.add({"brute_force == formula", to_fraction_string(formula), to_fraction_string(found.value), 0, 0, match});
    if (m == 2) {
        const ClassicalSearchResult restricted = brute_force_classical_value(2, true, jobs);
        rep.add({"parity restriction keeps optimum", to_fraction_string(found.value),
                 to_fraction_string(restricted.value), 0, 0, restricted.value == found.value});
    }
    const Rational canon = strategy_value(canonical_strategy(m));
    rep.add({"canonical strategy value", to_fraction_string(formula), to_fraction_string(canon), 0, 0, canon == formula});
    return rep;
}

inline VerificationReport verify_quantum_suite(int m, int alpha_samples, double tol, int jobs = 1) {
    VerificationReport rep;
    rep.suite = "quantum";
    const std::vector<double> alphas = alpha_grid(alpha_samples);
    const std::vector<Question> questions = all_questions(m);
    struct PerAlpha {
        double cross = 0;
        double average_err = 0;
        double average = 0;
    };
    std::vector<PerAlpha> per(alphas.size());
    parallel_for(alphas.size(), jobs, [&](size_t k) {
        const QuantumStrategy s(m, alphas[k]);
        double sum = 0;
        for (const Question& q : questions) {
            const double sim = winning_probability_simulated(s, q);
            const double op = winning_probability_operator(s, q);
            per[k].cross = std::max(per[k].cross, std::abs(sim - op));
            sum += sim;
        }
        per[k].average = sum / static_cast<double>(questions.size());
        per[k].average_err = std::abs(per[k].average - average_win_analytic(m, alphas[k]));
    });
    double cross = 0, avg_err = 0, best_avg = 0;
    for (const PerAlpha& p : per) {
        cross = std::max(cross, p.cross);
        avg_err = std::max(avg_err, p.average_err);
        best_avg = std::max(best_avg, p.average);
    }
    const QuantumValue qv = quantum_value_detail(m);
    const Interval bounds = quantum_value_bounds(m);
    const Interval adv = quantum_advantage_bounds(m);
    rep.fields = {{"m", m},
                  {"alpha_samples", alpha_samples},
                  {"max_simulated_vs_operator", cross},
                  {"max_average_vs_analytic", avg_err},
                  {"omega_q", decimal_json(qv.value)},
                  {"theta_star", decimal_json(qv.theta_star)}};
    rep.add({"simulated == operator", 0.0, cross, tol, tol - cross, cross <= tol});
    rep.add({"average == analytic", 0.0, avg_err, tol, tol - avg_err, avg_err <= tol});
    rep.add({"omega_q >= sampled averages", decimal_json(best_avg), decimal_json(qv.value), tol,
             qv.value - best_avg + tol, qv.value + tol >= best_avg});
    rep.add({"omega_q within bounds", json::array({bounds.lower, bounds.upper}), qv.value, 0,
             std::min(qv.value - bounds.lower, bounds.upper - qv.value),
             bounds.contains(qv.value) && (m == 2 || adv.contains(qv.advantage))});
    rep.add({"omega_q > omega_c", 0.0, qv.advantage, 0, qv.advantage, qv.advantage > 0});
    return rep;
}

inline VerificationReport verify_nosignalling_suite(int m, int subset_max) {
    VerificationReport rep;
    rep.suite = "nosignalling";
    const SparseCorrelation corr = build_ns_correlation(m);
    const bool norm = verify_normalization(corr);
    bool ns = true;
    json per_size = json::array();
    for (int k = 1; k <= subset_max; k++) {
        const NoSignallingReport r = verify_no_signalling_report(corr, k);
        ns = ns && r.ok;
        per_size.push_back({{"subset_size", k}, {"subsets", r.subsets}, {"comparisons", r.comparisons}, {"ok", r.ok}});
        rep.add({"no-signalling |I|=" + std::to_string(k), true, r.ok, 0, 0, r.ok});
    }
    const Rational value = ns_winning_probability(corr);
    rep.fields = {{"m", m},
                  {"normalization", norm},
                  {"no_signalling", ns},
                  {"value", to_fraction_string(value)},
                  {"weight", to_fraction_string(corr.weight)},
                  {"support_per_question", corr.support.front().size()},
                  {"subset_checks", per_size}};
    rep.add({"normalization", true, norm, 0, 0, norm});
    rep.add({"winning probability", "1", to_fraction_string(value), 0, 0, value == 1});
    return rep;
}

inline VerificationReport verify_lemma2_suite(int trials, int max_dim, int max_power, std::uint64_t seed, double tol,
                                              int jobs = 1) {
    VerificationReport rep;
    rep.suite = "lemma2";
    rep.seed = seed;
    std::vector<double> r_stars(static_cast<size_t>(max_power) + 1, 0.0);
    for (int M = 1; M <= max_power; M++) {
        r_stars[static_cast<size_t>(M)] = maximize_r(M).r_star;
    }
    std::vector<Lemma2Trial> results(static_cast<size_t>(trials));
    parallel_for(results.size(), jobs, [&](size_t k) {
        results[k] = lemma2_trial(seed + k, max_dim, max_power, r_stars, tol);
    });
    double worst = INFINITY;
    size_t failures = 0;
    json margins = json::array();
    for (const Lemma2Trial& t : results) {
        worst = std::min(worst, t.check.margin);
        failures += t.check.ok ? 0 : 1;
        margins.push_back({{"seed", t.seed}, {"dim", t.dim}, {"M", t.power}, {"margin", t.check.margin}});
    }
    rep.add({"random pairs satisfy bound", 0, static_cast<double>(failures), tol, worst + tol, failures == 0});

    // The optimal CHSH configuration saturates the bound at M = 1.
    const double pi = std::numbers::pi;
    const ConstrainedPair chsh = chsh_style_pair(z_theta(0), z_theta(pi / 2), z_theta(pi / 4), z_theta(-pi / 4));
    const double chsh_lhs = lemma2_lhs(chsh, ghz_state(2), 1);
    const double r1 = maximize_r(1).r_star;
    rep.add({"CHSH configuration is tight", r1, chsh_lhs, 1e-6, 1e-6 - std::abs(chsh_lhs - r1),
             std::abs(chsh_lhs - r1) <= 1e-6});
    const ChshOptimum opt = optimize_chsh_pair(seed);
    rep.add({"optimized CHSH angles reach r*", r1, opt.lhs, 1e-6, 1e-6 - std::abs(opt.lhs - r1),
             std::abs(opt.lhs - r1) <= 1e-6 && opt.lhs <= r1 + tol});

    rep.fields = {{"trials", trials},
                  {"max_dim", max_dim},
                  {"max_power", max_power},
                  {"worst_margin", worst},
                  {"failures", failures},
                  {"per_trial", margins}};
    return rep;
}

inline VerificationReport verify_lemma3_suite(int m_max) {
    VerificationReport rep;
    rep.suite = "lemma3";
    json rows = json::array();
    size_t failures = 0;
    for (int M = 1; M <= m_max; M++) {
        const Lemma3Check c = verify_lemma3_detail(M);
        failures += c.ok ? 0 : 1;
        rows.push_back({{"M", M}, {"excess", c.excess}, {"lower", c.lower}, {"upper", c.upper}, {"ok", c.ok}});
        rep.add({"M=" + std::to_string(M), json::array({c.lower, c.upper}), c.excess, 0,
                 std::min(c.excess - c.lower, c.upper - c.excess), c.ok});
    }
    rep.fields = {{"m_max", m_max}, {"failures", failures}, {"rows", rows}};
    return rep;
}

inline VerificationReport verify_converse_suite(int m, int alpha_samples, double tol = 1e-10, int jobs = 1) {
    VerificationReport rep;
    rep.suite = "converse";
    const std::vector<double> alphas = alpha_grid(alpha_samples);
    std::vector<ConverseReport> worst(alphas.size());
    std::vector<int> failures(alphas.size(), 0);
    std::vector<double> min_gap(alphas.size(), INFINITY);
    parallel_for(alphas.size(), jobs, [&](size_t k) {
        const QuantumStrategy s(m, alphas[k]);
        const EdgeObservableTable table = edge_observable_table(s);
        for (const Question& q : all_questions(m)) {
            const ConverseReport r = check_converse_chain(s, q, table, tol);
            failures[k] += r.ok ? 0 : 1;
            min_gap[k] = std::min(min_gap[k], r.relaxed_bound - r.win_probability);
            worst[k].max_identity_residual = std::max(worst[k].max_identity_residual, r.max_identity_residual);
            worst[k].max_constraint_residual = std::max(worst[k].max_constraint_residual, r.max_constraint_residual);
        }
    });
    int total_fail = 0;
    double gap = INFINITY, ident = 0, constraint = 0;
    for (size_t k = 0; k < alphas.size(); k++) {
        total_fail += failures[k];
        gap = std::min(gap, min_gap[k]);
        ident = std::max(ident, worst[k].max_identity_residual);
        constraint = std::max(constraint, worst[k].max_constraint_residual);
    }
    rep.add({"P_q <= relaxed bound", 0.0, gap, tol, gap + tol, gap + tol >= 0});
    rep.add({"edge parity identities", 0.0, ident, tol, tol - ident, ident <= tol});
    rep.add({"S_i^2 + T_i^2 = I", 0.0, constraint, tol, tol - constraint, constraint <= tol});
    rep.add({"all questions pass", 0, total_fail, 0, -double(total_fail), total_fail == 0});
    rep.fields = {{"m", m}, {"alpha_samples", alpha_samples}, {"min_gap", gap}};
    return rep;
}

struct AllOptions {
    bool quick = false;
    std::uint64_t seed = 42;
    int jobs = 1;
};

/// Every suite. Quick profile: m <= 4 and 100 generalized-CHSH trials.
inline VerificationReport verify_all_suite(const AllOptions& opt) {
    VerificationReport rep;
    rep.suite = "all";
    rep.seed = opt.seed;
    const int q_max = opt.quick ? 4 : 6;
    const int c_max = opt.quick ? 4 : 5;
    for (int m = 2; m <= 3; m++) {
        VerificationReport r = verify_classical_suite(m, opt.jobs);
        r.suite += "_m" + std::to_string(m);
        rep.merge(r);
    }
    for (int m = 2; m <= q_max; m++) {
        VerificationReport r = verify_quantum_suite(m, 32, 1e-10, opt.jobs);
        r.suite += "_m" + std::to_string(m);
        rep.merge(r);
    }
    for (int m = 2; m <= 4; m++) {
        VerificationReport r = verify_nosignalling_suite(m, m <= 3 ? m - 1 : 2);
        r.suite += "_m" + std::to_string(m);
        rep.merge(r);
    }
    rep.merge(verify_lemma2_suite(opt.quick ? 100 : 1000, 8, 6, opt.seed, 1e-9, opt.jobs));
    rep.merge(verify_lemma3_suite(64));
    for (int m = 2; m <= c_max; m++) {
        VerificationReport r = verify_converse_suite(m, 16, 1e-10, opt.jobs);
        r.suite += "_m" + std::to_string(m);
        rep.merge(r);
    }
    return rep;
}

}  // namespace hcgame
