// hcgame: value tables, figure data, and verification suites for the m-player
// Hypercube game.
//
// Exit status: 0 pass, 1 verification failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "hcgame/json_io.hpp"
#include "hcgame/nosignalling.hpp"
#include "hcgame/parallel.hpp"
#include "hcgame/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
    if (!ok) {
        throw UsageError(msg);
    }
}

std::pair<int, int> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("--m-range must look like LO:HI, got '" + s + "'");
    }
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

int finish(const hcgame::VerificationReport& rep) {
    std::cout << rep.to_json().dump(2) << '\n';
    return rep.pass ? kExitPass : kExitFail;
}

/// Literal JSON, or @path to read it from a file.
hcgame::json read_json_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') {
        std::ifstream in(arg.substr(1));
        require(static_cast<bool>(in), "cannot read '" + arg.substr(1) + "'");
        return hcgame::json::parse(in);
    }
    return hcgame::json::parse(arg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypercube game values and verification"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 42;
    std::optional<int> jobs_flag;
    app.add_option("--seed", seed, "Base RNG seed (echoed in reports)");
    app.add_option("--jobs", jobs_flag, "Worker threads (default: $HCGAME_JOBS or 1)")->check(CLI::PositiveNumber);

    // values
    auto* values = app.add_subcommand("values", "Classical, quantum and no-signalling values per m");
    std::string m_range = "2:12";
    std::optional<int> values_m;
    std::string format = "csv";
    std::string values_out;
    values->add_option("--m-range", m_range, "LO:HI, 2 <= LO <= HI <= 64");
    values->add_option("--m", values_m, "Single m (overrides --m-range)");
    values->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    values->add_option("--out", values_out, "Output path (default stdout)");

    // figure3
    auto* figure = app.add_subcommand("figure3", "CSV of the three values for m = 2..m_max");
    int fig_m_max = 12;
    std::string fig_out;
    figure->add_option("--m-max", fig_m_max, "Largest m (<= 64)");
    figure->add_option("--out", fig_out, "Output path (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "Score one answer against one question");
    std::string eval_question, eval_answer;
    eval->add_option("--question", eval_question, "JSON bit array, e.g. [1,0]")->required();
    eval->add_option("--answer", eval_answer, "JSON answer, or @file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->require_subcommand(1);
    double tol = -1;
    verify->add_option("--tol", tol, "Numerical tolerance (suite default when omitted)");

    auto* v_classical = verify->add_subcommand("classical", "Brute-force classical value vs 1/2 + 1/2^m");
    int c_m = 2;
    v_classical->add_option("--m", c_m, "2 or 3")->required();

    auto* v_quantum = verify->add_subcommand("quantum", "GHZ strategy: simulator vs operator vs closed form");
    int q_m = 2, q_samples = 32;
    v_quantum->add_option("--m", q_m, "2..6")->required();
    v_quantum->add_option("--alpha-samples", q_samples, "Alpha grid size over [0, pi/2]");

    auto* v_ns = verify->add_subcommand("nosignalling", "Explicit perfect no-signalling correlation");
    int ns_m = 2;
    std::optional<int> ns_subset;
    std::string ns_export;
    v_ns->add_option("--m", ns_m, "2..4")->required();
    v_ns->add_option("--subset-max", ns_subset, "Largest player subset to check");
    v_ns->add_option("--export", ns_export, "Write the correlation as JSON lines");

    auto* v_l2 = verify->add_subcommand("lemma2", "Randomized generalized-CHSH inequality checks");
    int l2_trials = 1000, l2_dim = 8, l2_power = 6;
    v_l2->add_option("--trials", l2_trials, "Number of random instances");
    v_l2->add_option("--dim", l2_dim, "Largest operator dimension (even)");
    v_l2->add_option("--max-power", l2_power, "Largest exponent M");

    auto* v_l3 = verify->add_subcommand("lemma3", "Bounds on max_theta r(theta)");
    int l3_max = 64;
    v_l3->add_option("--m-max", l3_max, "Largest exponent M");

    auto* v_conv = verify->add_subcommand("converse", "Relaxation chain and edge-observable identities");
    int cv_m = 2, cv_samples = 16;
    v_conv->add_option("--m", cv_m, "2..5")->required();
    v_conv->add_option("--alpha-samples", cv_samples, "Alpha grid size over [0, pi/2]");

    auto* v_all = verify->add_subcommand("all", "Every suite");
    bool quick = false;
    v_all->add_flag("--quick", quick, "m <= 4 and 100 generalized-CHSH trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const int jobs = jobs_flag.value_or(hcgame::jobs_from_env());

    try {
        if (values->parsed()) {
            auto [lo, hi] = values_m ? std::pair{*values_m, *values_m} : parse_range(m_range);
            require(lo >= 2 && lo <= hi && hi <= 64, "m range must satisfy 2 <= LO <= HI <= 64");
            const auto rows = hcgame::value_rows(lo, hi, jobs);
            emit(values_out, format == "csv" ? hcgame::values_csv(rows) : hcgame::values_json(rows).dump(2) + "\n");
            const auto check = hcgame::check_value_rows(rows);
            if (!check.pass) {
                std::cerr << check.to_json().dump(2) << '\n';
                return kExitFail;
            }
            return kExitPass;
        }
        if (figure->parsed()) {
            require(fig_m_max >= 2 && fig_m_max <= 64, "--m-max must lie in 2..64");
            emit(fig_out, hcgame::figure3_csv(fig_m_max, jobs));
            return kExitPass;
        }
        if (eval->parsed()) {
            hcgame::Question q;
            hcgame::Answer a;
            try {
                q = hcgame::question_from_json(read_json_arg(eval_question));
                a = hcgame::answer_from_json(read_json_arg(eval_answer), q.m());
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            require(a.matches(q), "answer does not match question");
            hcgame::json out = {{"question", hcgame::to_json(q)},
                                {"predicate", hcgame::predicate(a, q)},
                                {"relaxed_predicate", hcgame::relaxed_predicate(a, q)},
                                {"consistent", hcgame::consistency_ok(a, q)},
                                {"in_Z", hcgame::in_Z(a, q)}};
            hcgame::json parity = hcgame::json::array();
            for (const auto& f : a.assignments()) {
                parity.push_back(hcgame::parity_ok(f));
            }
            out["parity"] = parity;
            std::cout << out.dump(2) << '\n';
            return kExitPass;
        }
        if (v_classical->parsed()) {
            require(c_m == 2 || c_m == 3, "verify classical supports --m 2 or 3");
            return finish(hcgame::verify_classical_suite(c_m, jobs));
        }
        if (v_quantum->parsed()) {
            require(q_m >= 2 && q_m <= 6, "verify quantum supports --m 2..6");
            require(q_samples >= 2, "--alpha-samples must be at least 2");
            return finish(hcgame::verify_quantum_suite(q_m, q_samples, tol > 0 ? tol : 1e-10, jobs));
        }
        if (v_ns->parsed()) {
            require(ns_m >= 2 && ns_m <= 4, "verify nosignalling supports --m 2..4");
            const int subset_max = ns_subset.value_or(ns_m <= 3 ? ns_m - 1 : 2);
            require(subset_max >= 1 && subset_max <= ns_m, "--subset-max must lie in 1..m");
            if (!ns_export.empty()) {
                std::ostringstream os;
                hcgame::write_correlation_jsonl(os, hcgame::build_ns_correlation(ns_m));
                emit(ns_export, os.str());
            }
            return finish(hcgame::verify_nosignalling_suite(ns_m, subset_max));
        }
        if (v_l2->parsed()) {
            require(l2_trials >= 1, "--trials must be positive");
            require(l2_dim >= 2 && l2_dim <= 64 && l2_dim % 2 == 0, "--dim must be even and in 2..64");
            require(l2_power >= 1 && l2_power <= 64, "--max-power must lie in 1..64");
            return finish(hcgame::verify_lemma2_suite(l2_trials, l2_dim, l2_power, seed, tol > 0 ? tol : 1e-9, jobs));
        }
        if (v_l3->parsed()) {
            require(l3_max >= 1 && l3_max < hcgame::kMaxScalarDimension, "--m-max must lie in 1..999");
            return finish(hcgame::verify_lemma3_suite(l3_max));
        }
        if (v_conv->parsed()) {
            require(cv_m >= 2 && cv_m <= 5, "verify converse supports --m 2..5");
            require(cv_samples >= 2, "--alpha-samples must be at least 2");
            return finish(hcgame::verify_converse_suite(cv_m, cv_samples, tol > 0 ? tol : 1e-10, jobs));
        }
        if (v_all->parsed()) {
            return finish(hcgame::verify_all_suite({quick, seed, jobs}));
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
