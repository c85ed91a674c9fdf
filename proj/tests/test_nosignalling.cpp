#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hcgame/nosignalling.hpp"

using namespace hcgame;

TEST(AnswerKey, RoundTrip) {
    for (int m = 2; m <= 4; m++) {
        const Question q(m, (1U << m) - 1);
        const std::uint64_t limit = std::uint64_t{1} << (m * facet_bits(m));
        for (std::uint64_t key = 0; key < limit; key += 1 + limit / 997) {
            EXPECT_EQ(encode_answer(decode_answer(key, q)), key);
        }
    }
}

TEST(GlobalAssignment, SymmetricRestrictionsWin) {
    // Restrictions of a symmetric K always agree; Z membership reduces to player 1's parity.
    for (int m = 2; m <= 4; m++) {
        for (std::uint64_t half = 0; half < (std::uint64_t{1} << facet_bits(m)); half++) {
            const GlobalAssignment k = symmetric_from_half(m, half);
            ASSERT_TRUE(k.is_symmetric());
            for (const Question& q : all_questions(m)) {
                const Answer a = k.restrict_to(q);
                EXPECT_TRUE(consistency_ok(a, q));
                EXPECT_EQ(in_Z(a, q), a.player(1).product() == (q[1] ? -1 : 1));
            }
        }
    }
}

TEST(Correlation, SupportIsExactlyZ) {
    // Oracle: enumerate every answer and keep those in Z.
    for (int m = 2; m <= 3; m++) {
        const SparseCorrelation corr = build_ns_correlation(m);
        const std::uint64_t limit = std::uint64_t{1} << (m * facet_bits(m));
        for (const Question& q : all_questions(m)) {
            std::vector<AnswerKey> want;
            for (AnswerKey key = 0; key < limit; key++) {
                if (in_Z(decode_answer(key, q), q)) {
                    want.push_back(key);
                }
            }
            EXPECT_EQ(corr.support[q.code()], want) << q.str();
        }
    }
}

TEST(Correlation, SupportSize) {
    for (int m = 2; m <= 4; m++) {
        const SparseCorrelation corr = build_ns_correlation(m);
        for (const auto& keys : corr.support) {
            EXPECT_EQ(keys.size(), size_t{1} << (facet_bits(m) - 1));
            EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
        }
        EXPECT_EQ(corr.weight, inverse_pow2(static_cast<unsigned>(facet_bits(m) - 1)));
    }
}

TEST(Correlation, PlayerOneFixesEveryOtherAnswer) {
    for (int m = 2; m <= 4; m++) {
        const SparseCorrelation corr = build_ns_correlation(m);
        for (const auto& keys : corr.support) {
            std::set<std::uint64_t> first;
            for (AnswerKey key : keys) {
                EXPECT_TRUE(first.insert(player_mask(key, m, 1)).second);
            }
        }
    }
}

TEST(Correlation, NormalizedNoSignallingAndPerfect) {
    for (int m = 2; m <= 4; m++) {
        const SparseCorrelation corr = build_ns_correlation(m);
        EXPECT_TRUE(verify_normalization(corr));
        const int max_size = m <= 3 ? m - 1 : 2;
        for (int k = 1; k <= max_size; k++) {
            const NoSignallingReport r = verify_no_signalling_report(corr, k);
            EXPECT_TRUE(r.ok) << "m=" << m << " |I|=" << k << " " << r.first_violation;
            EXPECT_GT(r.comparisons, 0U);
        }
        EXPECT_EQ(ns_winning_probability(corr), Rational(1));
    }
}

TEST(Correlation, FullSubsetTriviallyConsistent) {
    const SparseCorrelation corr = build_ns_correlation(3);
    const NoSignallingReport r = verify_no_signalling_report(corr, 3);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.comparisons, 0U);
}

TEST(Correlation, DroppedSupportBreaksNormalization) {
    SparseCorrelation corr = build_ns_correlation(3);
    corr.support[5].pop_back();
    EXPECT_FALSE(verify_normalization(corr));
    EXPECT_LT(ns_winning_probability(corr), Rational(1));
}

TEST(Correlation, DetectsSignalling) {
    // Player 1 always answers all +1 when q = (0,1,*): its marginal now
    // depends on player 2's question.
    SparseCorrelation corr = build_ns_correlation(3);
    for (const Question& q : all_questions(3)) {
        if (q[1] == 0 && q[2] == 1) {
            for (AnswerKey& key : corr.support[q.code()]) {
                key &= ~std::uint64_t{0xF};
            }
            std::sort(corr.support[q.code()].begin(), corr.support[q.code()].end());
        }
    }
    EXPECT_TRUE(verify_normalization(corr));
    const NoSignallingReport r = verify_no_signalling_report(corr, 1);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.first_violation.empty());
}

TEST(Correlation, RejectsLargeDimensions) {
    EXPECT_THROW(build_ns_correlation(5), std::invalid_argument);
    EXPECT_THROW(build_ns_correlation(1), std::invalid_argument);
}
