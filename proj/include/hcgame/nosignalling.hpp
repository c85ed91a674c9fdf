#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcgame/bits.hpp"
#include "hcgame/game.hpp"
#include "hcgame/rational.hpp"

namespace hcgame {

/// Largest m for which the explicit correlation is materialized.
inline constexpr int kMaxNoSignallingDimension = 4;

/// Answers of small games packed into one integer: player i's facet mask sits
/// at bits [(i-1)·2^(m-1), i·2^(m-1)). Needs m·2^(m-1) <= 64, i.e. m <= 5.
using AnswerKey = std::uint64_t;

inline int facet_bits(int m) { return 1 << (m - 1); }

inline AnswerKey encode_answer(const Answer& a) {
    const int m = a.m();
    if (m > 5) {
        throw std::invalid_argument("answer keys are limited to m <= 5");
    }
    AnswerKey key = 0;
    for (int i = 1; i <= m; i++) {
        key |= a.player(i).mask() << ((i - 1) * facet_bits(m));
    }
    return key;
}

inline std::uint64_t player_mask(AnswerKey key, int m, int i) {
    const int f = facet_bits(m);
    const std::uint64_t low = f == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << f) - 1);
    return (key >> ((i - 1) * f)) & low;
}

inline Answer decode_answer(AnswerKey key, const Question& q) {
    const int m = q.m();
    if (m > 5) {
        throw std::invalid_argument("answer keys are limited to m <= 5");
    }
    std::vector<FacetAssignment> a;
    for (int i = 1; i <= m; i++) {
        a.push_back(FacetAssignment::from_mask(m, i, q[i], player_mask(key, m, i)));
    }
    return Answer(std::move(a));
}

/// K: one sign per hypercube vertex, bit set = -1.
struct GlobalAssignment {
    int m = 2;
    std::uint64_t negative = 0;

    Sign at(std::uint32_t code) const { return sign_of_bit((negative >> code) & 1U); }

    /// K(x_1, ..., x_m) = K(1 - x_1, ..., x_m) everywhere.
    bool is_symmetric() const {
        const std::uint32_t first = 1U << (m - 1);
        for (std::uint32_t c = 0; c < first; c++) {
            if (at(c) != at(c | first)) {
                return false;
            }
        }
        return true;
    }

    /// The answer whose facets are the restrictions of K.
    Answer restrict_to(const Question& q) const {
        Answer a = Answer::all_plus(q);
        for (int i = 1; i <= m; i++) {
            FacetAssignment& f = a.player(i);
            for (size_t k = 0; k < f.size(); k++) {
                f.set_sign(k, at(f.vertex_code(k)));
            }
        }
        return a;
    }
};

/// The symmetric assignment determined by its values on the x_1 = 0 facet.
inline GlobalAssignment symmetric_from_half(int m, std::uint64_t half) {
    if (m > 6) {
        throw std::invalid_argument("global assignments are stored in 64 bits (m <= 6)");
    }
    const int f = facet_bits(m);
    return {m, half | (half << f)};
}

/// Membership in Z: some symmetric K agrees with every player's facet, and
/// player 1's product is (-1)^{q_1}. Symmetric K only sees the vertex class
/// (x_2, ..., x_m), so the test merges every facet sign into its class and
/// looks for a conflict; unconstrained classes extend freely.
inline bool in_Z(const Answer& answer, const Question& q) {
    if (!answer.matches(q)) {
        throw std::invalid_argument("answer does not match question " + q.str());
    }
    const int m = q.m();
    const std::uint32_t first = 1U << (m - 1);
    std::vector<std::int8_t> cls(first, 0);
    for (const FacetAssignment& a : answer.assignments()) {
        for (size_t k = 0; k < a.size(); k++) {
            const std::uint32_t c = a.vertex_code(k) & (first - 1);
            const auto s = static_cast<std::int8_t>(a.sign(k));
            if (cls[c] == 0) {
                cls[c] = s;
            } else if (cls[c] != s) {
                return false;
            }
        }
    }
    return answer.player(1).product() == (q[1] ? -1 : 1);
}

/// P(a|q) uniform on a sparse support. support[q.code()] holds the sorted keys
/// of the answers with nonzero probability.
struct SparseCorrelation {
    int m = 2;
    Rational weight;
    std::vector<std::vector<AnswerKey>> support;
};

/// The perfect no-signalling correlation: weight 1/2^(2^(m-1)-1) on every
/// (a, q) in Z. Player 1's facet meets every symmetric class exactly once,
/// so a parity-valid a_1 fixes K and therefore every other player's answer.
inline SparseCorrelation build_ns_correlation(int m) {
    check_dimension(m, kMaxNoSignallingDimension);
    const int f = facet_bits(m);
    const std::uint32_t first = 1U << (m - 1);
    SparseCorrelation corr;
    corr.m = m;
    corr.weight = inverse_pow2(static_cast<unsigned>(f - 1));
    corr.support.resize(size_t{1} << m);
    for (const Question& q : all_questions(m)) {
        auto& keys = corr.support[q.code()];
        for (std::uint64_t a1 = 0; a1 < (std::uint64_t{1} << f); a1++) {
            const int parity = std::popcount(a1) % 2;
            if (parity != q[1]) {
                continue;
            }
            AnswerKey key = a1;
            for (int i = 2; i <= m; i++) {
                std::uint64_t mask = 0;
                for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(f); j++) {
                    const std::uint32_t v = insert_bit(j, coord_shift(m, i), q[i]);
                    mask |= ((a1 >> (v & (first - 1))) & 1U) << j;
                }
                key |= mask << ((i - 1) * f);
            }
            keys.push_back(key);
        }
        std::sort(keys.begin(), keys.end());
    }
    return corr;
}

/// Every conditional distribution sums to exactly 1.
inline bool verify_normalization(const SparseCorrelation& corr) {
    if (corr.support.size() != (size_t{1} << corr.m)) {
        return false;
    }
    for (const auto& keys : corr.support) {
        if (corr.weight * static_cast<long>(keys.size()) != 1) {
            return false;
        }
    }
    return true;
}

struct NoSignallingReport {
    bool ok = true;
    size_t subsets = 0;
    size_t comparisons = 0;
    std::string first_violation;
};

namespace detail {
inline AnswerKey marginal_key(AnswerKey key, int m, std::uint32_t subset) {
    AnswerKey out = 0;
    int slot = 0;
    for (int i = 1; i <= m; i++) {
        if ((subset >> (i - 1)) & 1U) {
            out |= player_mask(key, m, i) << (slot * facet_bits(m));
            slot++;
        }
    }
    return out;
}

inline std::uint32_t restrict_question(const Question& q, std::uint32_t subset) {
    std::uint32_t out = 0;
    for (int i = 1; i <= q.m(); i++) {
        if ((subset >> (i - 1)) & 1U) {
            out = (out << 1) | static_cast<std::uint32_t>(q[i]);
        }
    }
    return out;
}
}  // namespace detail

/// For every player subset I of the given size: the marginal P(a_I | q) must
/// be identical, exactly, for all questions sharing q_I.
inline NoSignallingReport verify_no_signalling_report(const SparseCorrelation& corr, int subset_size) {
    const int m = corr.m;
    if (subset_size < 0 || subset_size > m) {
        throw std::invalid_argument("subset size must lie in 0..m");
    }
    NoSignallingReport rep;
    const std::vector<Question> questions = all_questions(m);
    for (std::uint32_t subset = 0; subset < (1U << m); subset++) {
        if (std::popcount(subset) != subset_size) {
            continue;
        }
        rep.subsets++;
        std::map<std::uint32_t, std::map<AnswerKey, Rational>> reference;
        for (const Question& q : questions) {
            std::map<AnswerKey, Rational> marginal;
            for (AnswerKey key : corr.support[q.code()]) {
                marginal[detail::marginal_key(key, m, subset)] += corr.weight;
            }
            const std::uint32_t qi = detail::restrict_question(q, subset);
            auto [it, inserted] = reference.try_emplace(qi, marginal);
            if (!inserted) {
                rep.comparisons++;
                if (it->second != marginal && rep.ok) {
                    rep.ok = false;
                    rep.first_violation = "subset mask " + std::to_string(subset) + ", question " + q.str();
                }
            }
        }
    }
    return rep;
}

inline bool verify_no_signalling(const SparseCorrelation& corr, int subset_size) {
    return verify_no_signalling_report(corr, subset_size).ok;
}

/// sum_q 2^-m sum_a P(a|q) V(a|q), exactly.
inline Rational ns_winning_probability(const SparseCorrelation& corr) {
    Rational total = 0;
    for (const Question& q : all_questions(corr.m)) {
        long wins = 0;
        for (AnswerKey key : corr.support[q.code()]) {
            wins += predicate(decode_answer(key, q), q);
        }
        total += corr.weight * wins;
    }
    return total * inverse_pow2(static_cast<unsigned>(corr.m));
}

}  // namespace hcgame
