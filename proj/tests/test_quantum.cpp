#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hcgame/quantum.hpp"
#include "oracles.hpp"

using namespace hcgame;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Ghz, StateIsNormalized) {
    for (int m = 2; m <= 10; m++) {
        const StateVector g = ghz_state(m);
        EXPECT_NEAR(g.norm(), 1.0, 1e-15);
        EXPECT_NEAR(g[0].real(), std::sqrt(0.5), 1e-15);
        EXPECT_NEAR(g[g.dim() - 1].real(), std::sqrt(0.5), 1e-15);
    }
}

TEST(Strategy, Angles) {
    const QuantumStrategy s(4, 0.3);
    EXPECT_EQ(s.theta(1, 0), 0.0);
    EXPECT_NEAR(s.theta(1, 1), kPi / 2, 1e-15);
    EXPECT_EQ(s.theta(3, 0), 0.3);
    EXPECT_EQ(s.theta(3, 1), -0.3);
    EXPECT_THROW(QuantumStrategy(3, -0.1), std::invalid_argument);
    EXPECT_THROW(QuantumStrategy(3, 2.0), std::invalid_argument);
}

TEST(Strategy, OutcomeProbabilitiesMatchDenseOracle) {
    for (int m = 2; m <= 4; m++) {
        for (double alpha : {0.0, 0.4, kPi / 4, 1.3}) {
            const QuantumStrategy s(m, alpha);
            const auto g = oracle::ghz(m);
            for (const Question& q : all_questions(m)) {
                double total = 0;
                for (std::uint32_t mask = 0; mask < (1U << m); mask++) {
                    const OutcomeTuple o = OutcomeTuple::from_mask(m, mask);
                    oracle::Dense p = oracle::projector(oracle::angle(1, q[1], alpha), o[1]);
                    for (int i = 2; i <= m; i++) {
                        p = oracle::kron(p, oracle::projector(oracle::angle(i, q[i], alpha), o[i]));
                    }
                    const double want = oracle::sandwich(g, p).real();
                    const double got = outcome_probability(s, q, o);
                    EXPECT_NEAR(got, want, 1e-13);
                    total += got;
                }
                EXPECT_NEAR(total, 1.0, 1e-13);
            }
        }
    }
}

TEST(Strategy, AssignmentsNeverNeedParityRepair) {
    for (int m = 2; m <= 6; m++) {
        const QuantumStrategy s(m, 0.5);
        for (const Question& q : all_questions(m)) {
            for (std::uint32_t mask = 0; mask < (1U << m); mask++) {
                const auto a = outcome_to_answer_detailed(s, q, OutcomeTuple::from_mask(m, mask));
                EXPECT_TRUE(a.repaired.empty());
                for (const auto& f : a.answer.assignments()) {
                    EXPECT_TRUE(parity_ok(f));
                }
            }
        }
    }
}

TEST(Strategy, AssignmentRulesWriteOutcomes) {
    const QuantumStrategy s(3, 0.2);
    const Question q = Question::from_bits(std::vector<int>{1, 0, 1});
    const Answer a = outcome_to_answer(s, q, OutcomeTuple(std::vector<int>{-1, 1, -1}));
    EXPECT_EQ(a.player(1).sign_at(0b100), -1);
    EXPECT_EQ(a.player(1).sign_at(0b111), 1);
    EXPECT_EQ(a.player(3).sign_at(0b011), -1);
    EXPECT_EQ(a.player(3).sign_at(0b111), -1);
    EXPECT_EQ(a.player(2).sign_at(0b000), 1);
    EXPECT_EQ(a.player(2).sign_at(0b100), 1);
}

TEST(Strategy, SimulatedEqualsOperatorFormula) {
    for (int m = 2; m <= 6; m++) {
        for (double alpha : alpha_grid(7)) {
            const QuantumStrategy s(m, alpha);
            for (const Question& q : all_questions(m)) {
                EXPECT_NEAR(winning_probability_simulated(s, q), winning_probability_operator(s, q), 1e-12)
                    << "m=" << m << " alpha=" << alpha << " q=" << q.str();
            }
        }
    }
}

TEST(Strategy, TwoPlayerAverageMatchesChshClosedForm) {
    for (double alpha : alpha_grid(32)) {
        const QuantumStrategy s(2, alpha);
        double sum = 0;
        for (const Question& q : all_questions(2)) sum += winning_probability_simulated(s, q);
        EXPECT_NEAR(sum / 4, average_win_analytic(2, alpha), 1e-12);
    }
    EXPECT_NEAR(average_win_analytic(2, kPi / 4), (2 + std::sqrt(2.0)) / 4, 1e-15);
}

TEST(Strategy, AverageMatchesGhzCorrelatorClosedForm) {
    for (int m = 2; m <= 6; m++) {
        for (double alpha : alpha_grid(9)) {
            const QuantumStrategy s(m, alpha);
            double sum = 0;
            for (const Question& q : all_questions(m)) sum += winning_probability_simulated(s, q);
            EXPECT_NEAR(sum / std::ldexp(1.0, m), oracle::ghz_average_closed_form(m, alpha), 1e-12)
                << "m=" << m << " alpha=" << alpha;
        }
    }
}

TEST(Strategy, ThreePlayerQuarterPiValues) {
    const QuantumStrategy s(3, kPi / 4);
    const double c = (1 + std::sqrt(0.5)) * (1 + std::sqrt(0.5)) / 4;
    for (const Question& q : all_questions(3)) {
        const double p = winning_probability_simulated(s, q);
        if (q[1] == 0) {
            EXPECT_NEAR(p, c, 1e-12);
        } else {
            EXPECT_NEAR(p, q[2] == q[3] ? 0.375 : 0.125, 1e-12);
        }
    }
    double sum = 0;
    for (const Question& q : all_questions(3)) sum += winning_probability_simulated(s, q);
    EXPECT_NEAR(sum / 8, (5 + 2 * std::sqrt(2.0)) / 16, 1e-12);
}

TEST(Strategy, FirstBitZeroQuestionsFollowProductForm) {
    for (int m = 2; m <= 6; m++) {
        const double alpha = 0.7;
        const QuantumStrategy s(m, alpha);
        for (const Question& q : all_questions(m)) {
            if (q[1] == 0) {
                EXPECT_NEAR(winning_probability_simulated(s, q), std::pow((1 + std::cos(alpha)) / 2, m - 1), 1e-12);
            }
        }
    }
}

TEST(RFunction, ExcessMatchesDirectEvaluation) {
    for (int M = 1; M <= 30; M++) {
        for (double t : {0.0, 0.05, 0.3, kPi / 4, 1.2}) {
            const double direct = (r_function(t, M) - std::ldexp(1.0, M) - 1) / std::ldexp(1.0, M + 1);
            EXPECT_NEAR(r_normalized_excess(t, M), direct, 1e-12 * std::max(1.0, std::abs(direct)) + 1e-15);
        }
    }
}

TEST(RFunction, SymmetricAboutQuarterPi) {
    for (int M = 1; M <= 12; M++) {
        for (double t : {0.1, 0.4, 0.7}) {
            EXPECT_NEAR(r_function(t, M), r_function(kPi / 2 - t, M), 1e-10 * r_function(t, M));
        }
    }
}

TEST(RFunction, LogDomainAgreesAcrossSwitch) {
    const double t = 0.2;
    const double lin = std::pow(1 + std::cos(t), 51) + std::pow(1 + std::sin(t), 51);
    EXPECT_NEAR(r_function(t, 51) / lin, 1.0, 1e-13);
}

TEST(QuantumValue, ChshCase) {
    const QuantumValue v = quantum_value_detail(2);
    EXPECT_NEAR(v.value, (2 + std::sqrt(2.0)) / 4, 1e-12);
    EXPECT_NEAR(v.theta_star, kPi / 4, 1e-6);
}

TEST(QuantumValue, MaximizerMatchesScan) {
    for (int M = 1; M <= 10; M++) {
        double t_scan = 0;
        const double r_scan = oracle::r_scan(M, &t_scan);
        const RMaximum r = maximize_r(M);
        EXPECT_NEAR(r.r_star, r_scan, 1e-9 * r_scan) << M;
        EXPECT_GE(r.r_star, r_scan - 1e-12 * r_scan);
        const bool mirrored = std::abs(t_scan - (kPi / 2 - r.theta_star)) < 1e-4;
        EXPECT_TRUE(std::abs(t_scan - r.theta_star) < 1e-4 || mirrored) << M;
    }
}

TEST(QuantumValue, QuarterPiIsOptimalUpToThreeExponents) {
    for (int M = 1; M <= 3; M++) {
        EXPECT_NEAR(maximize_r(M).theta_star, kPi / 4, 1e-6);
    }
    EXPECT_LT(maximize_r(5).theta_star, kPi / 4 - 0.1);
}

TEST(QuantumValue, WithinBounds) {
    for (int m = 3; m <= 30; m++) {
        const QuantumValue v = quantum_value_detail(m);
        const Interval adv = quantum_advantage_bounds(m);
        EXPECT_TRUE(adv.contains(v.advantage)) << m;
        EXPECT_TRUE(quantum_value_bounds(m).contains(v.value)) << m;
    }
}

TEST(QuantumValue, AdvantagePositiveAndDecaying) {
    double prev = INFINITY;
    for (int m = 2; m <= 40; m++) {
        const QuantumValue v = quantum_value_detail(m);
        EXPECT_GT(v.advantage, 0.0);
        EXPECT_LE(v.advantage, std::ldexp(8.0 * (m - 1), -2 * m));
        const double total = std::ldexp(1.0, -m) + v.advantage;
        EXPECT_LT(total, prev);
        prev = total;
    }
}

TEST(QuantumValue, DominatesClosedFormAverages) {
    for (int m = 2; m <= 12; m++) {
        for (double alpha : alpha_grid(64)) {
            EXPECT_LE(average_win_analytic(m, alpha), quantum_value(m) + 1e-12);
        }
    }
}

TEST(QuantumValue, AlphaGridEndpoints) {
    const auto g = alpha_grid(32);
    EXPECT_EQ(g.size(), 32U);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), kPi / 2);
}
