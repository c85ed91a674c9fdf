#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcgame/game.hpp"
#include "hcgame/parallel.hpp"
#include "hcgame/rational.hpp"

namespace hcgame {

/// f_i(q) for every player i and question bit q.
class DeterministicStrategy {
   public:
    /// The all-+1 strategy.
    explicit DeterministicStrategy(int m) : m_(m) {
        check_dimension(m);
        responses_.reserve(2 * static_cast<size_t>(m));
        for (int i = 1; i <= m; i++) {
            for (int q = 0; q <= 1; q++) {
                responses_.emplace_back(m, i, q);
            }
        }
    }

    int m() const { return m_; }

    const FacetAssignment& response(int player, int q) const { return responses_.at(slot(player, q)); }

    void set_response(FacetAssignment a) {
        if (a.m() != m_) {
            throw std::invalid_argument("response dimension does not match strategy");
        }
        responses_.at(slot(a.player(), a.question_bit())) = std::move(a);
    }

    Answer answer_to(const Question& q) const {
        std::vector<FacetAssignment> a;
        a.reserve(static_cast<size_t>(m_));
        for (int i = 1; i <= m_; i++) {
            a.push_back(response(i, q[i]));
        }
        return Answer(std::move(a));
    }

    friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;

   private:
    size_t slot(int player, int q) const {
        check_player(m_, player);
        check_bit(q, "question bit");
        return 2 * static_cast<size_t>(player - 1) + static_cast<size_t>(q);
    }

    int m_;
    std::vector<FacetAssignment> responses_;
};

/// Fraction of the 2^m questions the strategy wins.
inline Rational strategy_value(const DeterministicStrategy& s) {
    long wins = 0;
    for (const Question& q : all_questions(s.m())) {
        wins += predicate(s.answer_to(q), q);
    }
    return Rational(BigInt(wins), pow2(static_cast<unsigned>(s.m())));
}

inline Rational strategy_value(const DeterministicStrategy& s, int m) {
    if (s.m() != m) {
        throw std::invalid_argument("strategy dimension does not match m");
    }
    return strategy_value(s);
}

/// All players answer +1 everywhere, except player 1 puts -1 on (1,...,1) when q_1 = 1.
inline DeterministicStrategy canonical_strategy(int m) {
    DeterministicStrategy s(m);
    FacetAssignment top(m, 1, 1);
    top.set_sign_at((1U << m) - 1U, -1);
    s.set_response(std::move(top));
    return s;
}

/// 1/2 + 1/2^m.
inline Rational classical_value_formula(int m) {
    if (m < 2) {
        throw std::invalid_argument("classical value needs m >= 2");
    }
    return Rational(1, 2) + inverse_pow2(static_cast<unsigned>(m));
}

struct ClassicalSearchResult {
    Rational value;
    DeterministicStrategy maximizer;
    std::uint64_t profiles = 0;
};

namespace detail {

/// Facet masks a player may answer with, ascending.
inline std::vector<std::uint64_t> facet_choices(int m, int player, int q, bool restrict_parity) {
    const unsigned facet = 1U << (m - 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << facet); mask++) {
        if (!restrict_parity || parity_ok(FacetAssignment::from_mask(m, player, q, mask))) {
            out.push_back(mask);
        }
    }
    return out;
}

}  // namespace detail

/// Exact classical value by exhaustive search over deterministic strategies.
///
/// A profile picks one facet mask for every (player, question bit) slot, 2m
/// slots in all. For each question the win/loss of every combination of the m
/// relevant slots is tabulated once, so scoring a profile is 2^m table lookups.
/// Profiles are visited in ascending order of (f_1(0), f_1(1), f_2(0), ...),
/// and the first maximizer found is kept, so the result does not depend on `jobs`.
inline ClassicalSearchResult brute_force_classical_value(int m, bool restrict_parity, int jobs = 1) {
    if (m != 2 && m != 3) {
        throw std::invalid_argument("brute-force classical value is only supported for m in {2, 3}");
    }
    if (m == 3 && !restrict_parity) {
        throw std::invalid_argument("m = 3 enumeration requires the parity restriction");
    }
    const size_t slots = 2 * static_cast<size_t>(m);
    std::vector<std::vector<std::uint64_t>> choices(slots);
    for (int i = 1; i <= m; i++) {
        for (int q = 0; q <= 1; q++) {
            choices[2 * static_cast<size_t>(i - 1) + static_cast<size_t>(q)] =
                detail::facet_choices(m, i, q, restrict_parity);
        }
    }
    const size_t radix = choices.front().size();

    // wins[q][c_1 * radix^(m-1) + ... + c_m]
    const std::vector<Question> questions = all_questions(m);
    size_t table_size = 1;
    for (int i = 0; i < m; i++) {
        table_size *= radix;
    }
    std::vector<std::vector<std::uint8_t>> wins(questions.size(), std::vector<std::uint8_t>(table_size));
    for (size_t qi = 0; qi < questions.size(); qi++) {
        const Question& q = questions[qi];
        for (size_t t = 0; t < table_size; t++) {
            std::vector<FacetAssignment> a;
            size_t rest = t;
            std::vector<size_t> digit(static_cast<size_t>(m));
            for (int i = m; i >= 1; i--) {
                digit[static_cast<size_t>(i - 1)] = rest % radix;
                rest /= radix;
            }
            for (int i = 1; i <= m; i++) {
                const auto& list = choices[2 * static_cast<size_t>(i - 1) + static_cast<size_t>(q[i])];
                a.push_back(FacetAssignment::from_mask(m, i, q[i], list[digit[static_cast<size_t>(i - 1)]]));
            }
            wins[qi][t] = static_cast<std::uint8_t>(predicate(Answer(std::move(a)), q));
        }
    }

    // Profile index: slot 0 most significant.
    size_t inner = 1;
    for (size_t k = 1; k < slots; k++) {
        inner *= radix;
    }
    struct Best {
        int wins = -1;
        std::uint64_t index = 0;
    };
    std::vector<Best> best(radix);
    parallel_for(radix, jobs, [&](size_t lead) {
        std::vector<size_t> digit(slots);
        Best local;
        for (size_t r = 0; r < inner; r++) {
            digit[0] = lead;
            size_t rest = r;
            for (size_t k = slots - 1; k >= 1; k--) {
                digit[k] = rest % radix;
                rest /= radix;
            }
            int count = 0;
            for (size_t qi = 0; qi < questions.size(); qi++) {
                size_t t = 0;
                for (int i = 1; i <= m; i++) {
                    t = t * radix + digit[2 * static_cast<size_t>(i - 1) + static_cast<size_t>(questions[qi][i])];
                }
                count += wins[qi][t];
            }
            if (count > local.wins) {
                local = {count, static_cast<std::uint64_t>(lead * inner + r)};
            }
        }
        best[lead] = local;
    });

    Best overall;
    for (const Best& b : best) {
        if (b.wins > overall.wins) {
            overall = b;
        }
    }

    DeterministicStrategy maximizer(m);
    std::uint64_t rest = overall.index;
    for (size_t k = slots; k-- > 0;) {
        const size_t d = rest % radix;
        rest /= radix;
        const int player = static_cast<int>(k / 2) + 1;
        const int q = static_cast<int>(k % 2);
        maximizer.set_response(FacetAssignment::from_mask(m, player, q, choices[k][d]));
    }
    return {Rational(BigInt(overall.wins), pow2(static_cast<unsigned>(m))), std::move(maximizer),
            static_cast<std::uint64_t>(radix * inner)};
}

/// Value of the strategy under the product-over-intersection relaxation of V.
inline Rational relaxed_strategy_value(const DeterministicStrategy& s) {
    long wins = 0;
    for (const Question& q : all_questions(s.m())) {
        wins += relaxed_predicate(s.answer_to(q), q);
    }
    return Rational(BigInt(wins), pow2(static_cast<unsigned>(s.m())));
}

struct EdgeScalars {
    std::vector<int> S;  // S_i for i = 2..m at index i-2
    std::vector<int> T;
};

/// Classical reduction of the edge observables. For a parity-respecting
/// deterministic strategy every edge observable is a ±1 scalar, so each
/// S_i = O_{0,0,1}(O_{0,0,i}+O_{0,1,i})/2 and T_i = O_{1,0,1}(O_{0,0,i}-O_{0,1,i})/2
/// lies in {0, ±1} with S_i^2 + T_i^2 = 1.
inline EdgeScalars edge_scalars(const DeterministicStrategy& s) {
    const int m = s.m();
    EdgeScalars out;
    for (int i = 2; i <= m; i++) {
        auto edge1 = [&](int q1, int qi) { return product_over_intersection(s.response(1, q1), q1, i, qi); };
        auto edgei = [&](int q1, int qi) { return product_over_intersection(s.response(i, qi), q1, i, qi); };
        const int S = edge1(0, 0) * (edgei(0, 0) + edgei(0, 1)) / 2;
        const int T = edge1(1, 0) * (edgei(0, 0) - edgei(0, 1)) / 2;
        if (S * S + T * T != 1) {
            throw std::logic_error("edge scalars violate S^2 + T^2 = 1; strategy breaks parity");
        }
        out.S.push_back(S);
        out.T.push_back(T);
    }
    return out;
}

/// [prod_i (1+S_i) + prod_i (1+T_i)] / 2^m. Equals relaxed_strategy_value for
/// parity-respecting strategies.
inline Rational edge_product_value(const DeterministicStrategy& s) {
    const EdgeScalars e = edge_scalars(s);
    BigInt ps = 1, pt = 1;
    for (size_t k = 0; k < e.S.size(); k++) {
        ps *= 1 + e.S[k];
        pt *= 1 + e.T[k];
    }
    return Rational(ps + pt, pow2(static_cast<unsigned>(s.m())));
}

/// max_i [(1+S_i)^(m-1) + (1+T_i)^(m-1)] / 2^m, never above 1/2 + 1/2^m.
inline Rational classical_edge_bound(const DeterministicStrategy& s) {
    const int m = s.m();
    const EdgeScalars e = edge_scalars(s);
    Rational best = -1;
    for (size_t k = 0; k < e.S.size(); k++) {
        const BigInt lhs = boost::multiprecision::pow(BigInt(1 + e.S[k]), static_cast<unsigned>(m - 1)) +
                           boost::multiprecision::pow(BigInt(1 + e.T[k]), static_cast<unsigned>(m - 1));
        const Rational v(lhs, pow2(static_cast<unsigned>(m)));
        if (v > best) {
            best = v;
        }
    }
    return best;
}

}  // namespace hcgame
