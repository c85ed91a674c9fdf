#include <gtest/gtest.h>

#include <random>

#include "hcgame/classical.hpp"
#include "hcgame/rational.hpp"

using namespace hcgame;

namespace {

DeterministicStrategy strategy_from_masks(int m, const std::vector<std::uint64_t>& masks) {
    DeterministicStrategy s(m);
    for (int i = 1; i <= m; i++) {
        for (int q = 0; q <= 1; q++) {
            s.set_response(FacetAssignment::from_mask(m, i, q, masks[static_cast<size_t>(2 * (i - 1) + q)]));
        }
    }
    return s;
}

/// A random deterministic strategy whose every facet answer respects parity.
DeterministicStrategy random_parity_strategy(int m, std::mt19937_64& rng) {
    DeterministicStrategy s(m);
    const int f = 1 << (m - 1);
    for (int i = 1; i <= m; i++) {
        for (int q = 0; q <= 1; q++) {
            std::uint64_t mask = rng() & ((std::uint64_t{1} << f) - 1);
            const int want = (i == 1) ? q : 0;
            if (std::popcount(mask) % 2 != want) {
                mask ^= 1;
            }
            s.set_response(FacetAssignment::from_mask(m, i, q, mask));
        }
    }
    return s;
}

}  // namespace

TEST(Rational, FormulaValues) {
    EXPECT_EQ(classical_value_formula(2), Rational(3, 4));
    EXPECT_EQ(classical_value_formula(3), Rational(5, 8));
    EXPECT_EQ(classical_value_formula(10), Rational(513, 1024));
    EXPECT_EQ(to_fraction_string(classical_value_formula(64)), "9223372036854775809/18446744073709551616");
}

TEST(Rational, DecimalRendering) {
    EXPECT_EQ(to_decimal_string(Rational(3, 4)), "0.75");
    EXPECT_EQ(to_decimal_string(Rational(5, 8)), "0.625");
    EXPECT_EQ(to_decimal_string(Rational(1)), "1");
    EXPECT_EQ(to_decimal_string(Rational(2, 3)), "0.666666666667");
    EXPECT_EQ(to_decimal_string(Rational(1, 3)), "0.333333333333");
    EXPECT_EQ(to_decimal_string(classical_value_formula(12)), "0.500244140625");
    EXPECT_EQ(to_decimal_string(classical_value_formula(20)), "0.500000953674");
    EXPECT_EQ(parse_fraction("6/8"), Rational(3, 4));
}

TEST(ClassicalValue, CanonicalStrategyAchievesFormula) {
    for (int m = 2; m <= 10; m++) {
        EXPECT_EQ(strategy_value(canonical_strategy(m)), classical_value_formula(m)) << m;
    }
}

TEST(ClassicalValue, BruteForceTwoPlayersMatchesDirectEnumeration) {
    // Independent path: every one of the 2^8 strategies scored through the predicate.
    Rational best = 0;
    for (std::uint32_t code = 0; code < 256; code++) {
        std::vector<std::uint64_t> masks(4);
        for (int k = 0; k < 4; k++) {
            masks[static_cast<size_t>(k)] = (code >> (2 * k)) & 3U;
        }
        best = std::max(best, strategy_value(strategy_from_masks(2, masks)));
    }
    EXPECT_EQ(best, Rational(3, 4));
    const auto r = brute_force_classical_value(2, false);
    EXPECT_EQ(r.value, best);
    EXPECT_EQ(r.profiles, 256U);
    EXPECT_EQ(strategy_value(r.maximizer), r.value);
}

TEST(ClassicalValue, ParityRestrictionKeepsOptimum) {
    const auto r = brute_force_classical_value(2, true);
    EXPECT_EQ(r.value, Rational(3, 4));
    EXPECT_EQ(r.profiles, 16U);
}

TEST(ClassicalValue, ThreePlayersRestricted) {
    const auto r = brute_force_classical_value(3, true, 4);
    EXPECT_EQ(r.value, Rational(5, 8));
    EXPECT_EQ(r.profiles, std::uint64_t{1} << 18);
    EXPECT_EQ(strategy_value(r.maximizer), Rational(5, 8));
}

TEST(ClassicalValue, ResultIndependentOfThreadCount) {
    const auto a = brute_force_classical_value(3, true, 1);
    const auto b = brute_force_classical_value(3, true, 3);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.maximizer, b.maximizer);
}

TEST(ClassicalValue, RejectsUnsupportedSizes) {
    EXPECT_THROW(brute_force_classical_value(4, true), std::invalid_argument);
    EXPECT_THROW(brute_force_classical_value(3, false), std::invalid_argument);
}

TEST(ClassicalReduction, EdgeProductEqualsRelaxedValue) {
    std::mt19937_64 rng(3);
    for (int m = 2; m <= 5; m++) {
        for (int trial = 0; trial < 200; trial++) {
            const auto s = random_parity_strategy(m, rng);
            const Rational v = strategy_value(s);
            const Rational relaxed = relaxed_strategy_value(s);
            EXPECT_EQ(edge_product_value(s), relaxed);
            EXPECT_LE(v, relaxed);
            EXPECT_LE(relaxed, classical_edge_bound(s));
            EXPECT_LE(classical_edge_bound(s), classical_value_formula(m));
        }
    }
}

TEST(ClassicalReduction, EdgeScalarsAreUnitVectors) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; trial++) {
        const auto e = edge_scalars(random_parity_strategy(4, rng));
        for (size_t k = 0; k < e.S.size(); k++) {
            EXPECT_EQ(e.S[k] * e.S[k] + e.T[k] * e.T[k], 1);
        }
    }
}
